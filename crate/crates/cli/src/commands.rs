use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use qlk_core::combinations::binomial;
use qlk_core::css::{commutation_failures, css_distance};
use qlk_core::decoder::{
    build_lookup_with_cap, correctable_weight, Decoder, LookupTables, Summary,
};
use qlk_core::encoder::{paper_circuit, standard_form_encoder, CircuitFormat};
use qlk_core::gf2::to_alist;
use qlk_core::tableau::verify_encoding;
use qlk_core::{BitVec, DistanceBound, Gate};

use crate::header::{DistanceRecord, HX_FILE, HZ_FILE};
use crate::source::{CodeArgs, LoadedCode};
use crate::CliError;

/// Candidate supports beyond which a distance search is refused.
const SEARCH_CAP: u128 = 100_000_000_000;

fn one_based(v: &[usize]) -> String {
    v.iter()
        .map(|j| (j + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn parameters_line(loaded: &LoadedCode) -> String {
    let c = &loaded.code;
    let d = loaded
        .certified_d()
        .map_or_else(|| "?".to_string(), |d| d.to_string());
    format!("[[{},{},{d}]]", c.n(), c.k_logical())
}

pub fn build(args: &CodeArgs, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = args.load()?;
    let c = &loaded.code;
    println!("{}", c.provenance.family);
    println!("{}", parameters_line(&loaded));
    println!(
        "rank H_X = {}, rank H_Z = {} ({} x {} and {} x {})",
        c.rank_x(),
        c.rank_z(),
        c.hx().num_rows(),
        c.n(),
        c.hz().num_rows(),
        c.n()
    );
    match c.provenance.predicted_d {
        Some(d) => println!("predicted d = {d} (not certified; run `qlk distance`)"),
        None => println!("predicted d = none"),
    }
    for note in &c.provenance.notes {
        println!("{note}");
    }
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(HX_FILE), c.hx().to_string())?;
        fs::write(dir.join(HZ_FILE), c.hz().to_string())?;
        loaded.header_or_fresh().write(dir)?;
        println!("wrote {}", dir.display());
    }
    Ok(())
}

pub fn check(args: &CodeArgs) -> Result<(), CliError> {
    let loaded = args.load()?;
    let c = &loaded.code;
    let mut failed = Vec::new();

    let pairs = commutation_failures(c);
    if pairs.is_empty() {
        println!(
            "commutation: pass ({} x {} generator pairs)",
            c.hx().num_rows(),
            c.hz().num_rows()
        );
    } else {
        println!(
            "commutation: FAIL, {} anticommuting (H_X row, H_Z row) pairs, 1-based:",
            pairs.len()
        );
        for (i, j) in &pairs {
            println!("  ({}, {})", i + 1, j + 1);
        }
        failed.push("commutation");
    }

    let mut rank_problems = Vec::new();
    if let Some(h) = &loaded.header {
        let got = (c.n(), c.k_logical(), c.rank_x(), c.rank_z());
        let want = (h.n, h.k_logical, h.rank_x, h.rank_z);
        if got != want {
            rank_problems.push(format!(
                "(n, k, rank H_X, rank H_Z) = {got:?}, header records {want:?}"
            ));
        }
    }
    if let Some(k) = loaded.qlk_param() {
        let want = (6 * k * k, k * k, 3 * k * k, 2 * k * k);
        let got = (c.n(), c.k_logical(), c.rank_x(), c.rank_z());
        if got != want {
            rank_problems.push(format!(
                "(n, k, rank H_X, rank H_Z) = {got:?}, QL_{k} needs {want:?}"
            ));
        }
    }
    if rank_problems.is_empty() {
        println!(
            "rank: pass (rank H_X = {}, rank H_Z = {}, k = {})",
            c.rank_x(),
            c.rank_z(),
            c.k_logical()
        );
    } else {
        println!("rank: FAIL");
        for p in &rank_problems {
            println!("  {p}");
        }
        failed.push("rank");
    }

    let (wx, wz) = (c.hx().row_weights(), c.hz().row_weights());
    let range = |w: &[usize]| match (w.iter().min(), w.iter().max()) {
        (Some(a), Some(b)) => format!("{a}..{b}"),
        _ => "none".into(),
    };
    match loaded.qlk_param() {
        Some(k) => {
            let bad_x: Vec<usize> = (0..wx.len()).filter(|&i| wx[i] != k).collect();
            let bad_z: Vec<usize> = (0..wz.len())
                .filter(|&i| wz[i] != k * k && wz[i] != 2 * k)
                .collect();
            if bad_x.is_empty() && bad_z.is_empty() {
                println!(
                    "row weights: pass (H_X rows weigh {k}; H_Z rows weigh {} or {})",
                    k * k,
                    2 * k
                );
            } else {
                println!("row weights: FAIL");
                if !bad_x.is_empty() {
                    println!("  H_X rows not of weight {k}: {}", one_based(&bad_x));
                }
                if !bad_z.is_empty() {
                    println!(
                        "  H_Z rows not of weight {} or {}: {}",
                        k * k,
                        2 * k,
                        one_based(&bad_z)
                    );
                }
                failed.push("row weights");
            }
        }
        None => println!(
            "row weights: pass (H_X {}, H_Z {}; no family pattern to enforce)",
            range(&wx),
            range(&wz)
        ),
    }

    if failed.is_empty() {
        println!("check passed");
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} audit failed",
            failed.join(", ")
        )))
    }
}

pub fn distance(args: &CodeArgs, w_max: usize) -> Result<(), CliError> {
    let mut loaded = args.load()?;
    let n = loaded.code.n();
    let candidates: u128 = (1..=w_max.min(n)).map(|w| binomial(n, w)).sum();
    if candidates > SEARCH_CAP {
        return Err(qlk_core::Error::Capacity {
            what: format!("distance search up to weight {w_max}"),
            needed: candidates,
            cap: SEARCH_CAP,
        }
        .into());
    }
    let r = css_distance(&loaded.code, w_max)?;
    let witness = |v: &Option<BitVec>| {
        v.as_ref()
            .map(|v| format!(" (witness on qubits {})", one_based(&v.support())))
            .unwrap_or_default()
    };
    let relation = |b: DistanceBound| match b {
        DistanceBound::Exact(d) => format!("= {d}"),
        DistanceBound::Above(w) => format!("> {w}"),
    };
    println!("d_X {}{}", relation(r.d_x), witness(&r.witness_x));
    println!("d_Z {}{}", relation(r.d_z), witness(&r.witness_z));
    match r.d().exact() {
        Some(d) => println!("d = {d}"),
        None => println!("d > {w_max}"),
    }
    match loaded.code.provenance.predicted_d {
        Some(d) => println!("predicted d = {d}"),
        None => println!("predicted d = none"),
    }
    let mut header = loaded.header_or_fresh();
    header.distance = Some(DistanceRecord::from_report(&r));
    if let Some(dir) = &loaded.dir {
        header.write(dir)?;
        println!("updated {}", dir.join(crate::header::HEADER_FILE).display());
    }
    loaded.header = Some(header);
    println!("{}", parameters_line(&loaded));
    Ok(())
}

pub fn circuit(
    args: &CodeArgs,
    paper_literal: bool,
    format: CircuitFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let loaded = args.load()?;
    let code = &loaded.code;
    let (kind, circuit) = if paper_literal {
        let k = loaded
            .qlk_param()
            .ok_or_else(|| CliError::Usage("--paper-literal needs a QL_k code".into()))?;
        ("paper-literal", paper_circuit(k)?)
    } else {
        ("standard-form", standard_form_encoder(code)?)
    };
    let report = verify_encoding(&circuit, code, &BitVec::zeros(code.k_logical()))?;

    let text = circuit.export(format);
    let mut lines = Vec::new();
    let hadamards = circuit
        .gates()
        .iter()
        .filter(|g| matches!(g, Gate::H(_)))
        .count();
    lines.push(format!(
        "{kind} circuit: {} qubits, {} gates ({hadamards} H, {} other)",
        circuit.num_qubits(),
        circuit.len(),
        circuit.len() - hadamards
    ));
    let verdict = if report.logicals_ok() { "pass" } else { "fail" };
    lines.push(format!(
        "verification on the all-zero logical input: {verdict}"
    ));
    if !report.failing_x_rows.is_empty() {
        lines.push(format!(
            "  H_X rows not stabilized ({} of {}): {}",
            report.failing_x_rows.len(),
            code.hx().num_rows(),
            one_based(&report.failing_x_rows)
        ));
    }
    if !report.failing_z_rows.is_empty() {
        lines.push(format!(
            "  H_Z rows not stabilized ({} of {}): {}",
            report.failing_z_rows.len(),
            code.hz().num_rows(),
            one_based(&report.failing_z_rows)
        ));
    }
    if !report.failing_logicals.is_empty() {
        lines.push(format!(
            "  logical Z operators with the wrong eigenvalue: {}",
            one_based(&report.failing_logicals)
        ));
    }

    match out {
        Some(path) => {
            fs::write(path, &text)?;
            lines.push(format!("wrote {}", path.display()));
            for l in &lines {
                println!("{l}");
            }
        }
        None => {
            print!("{text}");
            for l in &lines {
                eprintln!("{l}");
            }
        }
    }
    if !paper_literal && !report.logicals_ok() {
        return Err(CliError::Verification(
            "internal error: the standard-form encoder failed verification".into(),
        ));
    }
    Ok(())
}

pub struct SimulateArgs {
    pub code: CodeArgs,
    pub p: f64,
    pub shots: u64,
    pub seed: u64,
    pub assume_d: Option<usize>,
    pub exhaustive_weight: Option<usize>,
    pub out: Option<PathBuf>,
    pub table_cap: u128,
    pub save_tables: Option<PathBuf>,
    pub load_tables: Option<PathBuf>,
}

pub fn simulate(a: &SimulateArgs) -> Result<(), CliError> {
    let loaded = a.code.load()?;
    let code = &loaded.code;
    let d = a.assume_d.or_else(|| loaded.certified_d()).ok_or_else(|| {
        CliError::Usage(
            "no certified distance: run `qlk distance --code-dir ...` first or pass --assume-d"
                .into(),
        )
    })?;
    let t = correctable_weight(d);
    let tables = match &a.load_tables {
        Some(path) => {
            let tables = LookupTables::read_from(&mut fs::File::open(path)?)?;
            if tables.t != t {
                return Err(CliError::Usage(format!(
                    "{} holds t = {} tables, d = {d} needs t = {t}",
                    path.display(),
                    tables.t
                )));
            }
            tables
        }
        None => build_lookup_with_cap(code, t, a.table_cap)?,
    };
    if let Some(path) = &a.save_tables {
        let mut bytes = Vec::new();
        tables.write_to(&mut bytes)?;
        fs::write(path, bytes)?;
    }
    let decoder = Decoder::new(code, &tables)?;
    eprintln!(
        "note: d = {d}, t = {t}; X and Z errors are decoded independently, so Y correlations are ignored"
    );

    if let Some(w) = a.exhaustive_weight {
        let errors = binomial(code.n(), w).saturating_mul(3u128.saturating_pow(w as u32));
        if errors > a.table_cap {
            return Err(qlk_core::Error::Capacity {
                what: format!("exhaustive sweep of weight-{w} errors"),
                needed: errors,
                cap: a.table_cap,
            }
            .into());
        }
        let s = decoder.exhaustive(w)?;
        println!(
            "exhaustive weight {w}: {}/{} corrected ({} heralded, {} logical X, {} logical Z, {} logical Y)",
            s.successes, s.shots, s.heralded, s.fail_x, s.fail_z, s.fail_y
        );
        return Ok(());
    }

    let summary = decoder.run_monte_carlo(a.p, a.shots, a.seed)?;
    let row = summary.csv_row(loaded.qlk_param(), code.n(), a.p, a.seed);
    println!("{}", Summary::CSV_HEADER);
    println!("{row}");
    if let Some(path) = &a.out {
        let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        if fresh {
            writeln!(f, "{}", Summary::CSV_HEADER)?;
        }
        writeln!(f, "{row}")?;
    }
    Ok(())
}

pub fn export_alist(args: &CodeArgs, out: &Path) -> Result<(), CliError> {
    let loaded = args.load()?;
    fs::create_dir_all(out)?;
    for (name, m) in [
        ("HX.alist", loaded.code.hx()),
        ("HZ.alist", loaded.code.hz()),
    ] {
        let path = out.join(name);
        fs::write(&path, to_alist(m))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
