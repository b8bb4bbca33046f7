use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use qlk_core::classical::ClassicalCode;
use qlk_core::css::{build_qlk, generalized_shor, hypergraph_product};
use qlk_core::{BitMatrix, CssCode, Family, Provenance};

use crate::header::{Header, HX_FILE, HZ_FILE};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Qlk,
    Shor,
    Hgp,
}

/// Where a code comes from: a directory written by `build`, or built on the
/// fly from a family.
#[derive(Clone, Debug, Args)]
pub struct CodeArgs {
    /// Directory holding HX.txt, HZ.txt and optionally header.json.
    #[arg(long, conflicts_with_all = ["family", "k", "c1", "c2"])]
    pub code_dir: Option<PathBuf>,
    /// Construction family (default: qlk).
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Family parameter for qlk (k >= 3).
    #[arg(long)]
    pub k: Option<usize>,
    /// First classical code for shor/hgp: lk:K, lkp:K, lk-dual:K or lkp-dual:K.
    #[arg(long)]
    pub c1: Option<String>,
    /// Second classical code for shor/hgp.
    #[arg(long)]
    pub c2: Option<String>,
}

pub struct LoadedCode {
    pub code: CssCode,
    /// Header read from the code directory, if any.
    pub header: Option<Header>,
    pub dir: Option<PathBuf>,
}

impl LoadedCode {
    /// `k` of a QL_k code, from the construction record.
    pub fn qlk_param(&self) -> Option<usize> {
        match self.code.provenance.family {
            Family::Qlk { k } => Some(k),
            _ => None,
        }
    }

    pub fn certified_d(&self) -> Option<usize> {
        self.header
            .as_ref()
            .and_then(|h| h.distance.as_ref())
            .and_then(|d| d.certified_d)
    }

    pub fn header_or_fresh(&self) -> Header {
        self.header
            .clone()
            .unwrap_or_else(|| Header::for_code(&self.code))
    }
}

pub fn classical_from_spec(spec: &str) -> Result<ClassicalCode, CliError> {
    let (kind, k) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("classical code {spec:?} is not KIND:K")))?;
    let k: usize = k
        .parse()
        .map_err(|_| CliError::Usage(format!("bad k in classical code {spec:?}")))?;
    let mut code = match kind {
        "lk" | "lk-dual" => ClassicalCode::lk(k)?,
        "lkp" | "lkp-dual" => ClassicalCode::lk_plus(k)?,
        _ => {
            return Err(CliError::Usage(format!(
                "unknown classical code {kind:?}; expected lk, lkp, lk-dual or lkp-dual"
            )))
        }
    };
    code.certify()?;
    Ok(if kind.ends_with("-dual") {
        code.dual()
    } else {
        code
    })
}

impl CodeArgs {
    pub fn load(&self) -> Result<LoadedCode, CliError> {
        if let Some(dir) = &self.code_dir {
            let read = |name: &str| -> Result<BitMatrix, CliError> {
                let path = dir.join(name);
                let text = fs::read_to_string(&path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                text.parse()
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
            };
            let hx = read(HX_FILE)?;
            let hz = read(HZ_FILE)?;
            let header = Header::read(dir)?;
            let provenance = header
                .as_ref()
                .map_or_else(Provenance::custom, Header::provenance);
            return Ok(LoadedCode {
                code: CssCode::new(hx, hz, provenance)?,
                header,
                dir: Some(dir.clone()),
            });
        }
        let code = match self.family.unwrap_or(FamilyArg::Qlk) {
            FamilyArg::Qlk => {
                let k = self
                    .k
                    .ok_or_else(|| CliError::Usage("--family qlk needs --k".into()))?;
                build_qlk(k)?
            }
            family => {
                let (Some(c1), Some(c2)) = (&self.c1, &self.c2) else {
                    return Err(CliError::Usage(
                        format!("--family {family:?} needs --c1 and --c2").to_lowercase(),
                    ));
                };
                let (c1, c2) = (classical_from_spec(c1)?, classical_from_spec(c2)?);
                if family == FamilyArg::Shor {
                    generalized_shor(&c1, &c2)?
                } else {
                    hypergraph_product(&c1, &c2)?
                }
            }
        };
        Ok(LoadedCode {
            code,
            header: None,
            dir: None,
        })
    }
}
