mod common;

use common::*;
use qlk_core::classical::{build_gk, is_sub_exceeding};
use qlk_core::{BitMatrix, BitVec, ClassicalCode, Error};

#[test]
fn printed_matrices_byte_for_byte() {
    let l4 = ClassicalCode::lk(4).unwrap();
    assert_eq!(l4.generator.to_string(), G_L4);
    assert_eq!(l4.parity_check.to_string(), H_L4);
    assert_eq!(
        ClassicalCode::lk_plus(4).unwrap().parity_check.to_string(),
        H_L4_PLUS
    );
    assert_eq!(
        ClassicalCode::lk_plus(5).unwrap().generator.to_string(),
        G_L5_PLUS
    );
    assert_eq!(build_gk(4).to_string(), G_4);
    assert_eq!(build_gk(5).to_string(), G_5);
    assert_eq!(build_gk(1), BitMatrix::from_dense(&[&[0]]));
}

#[test]
fn duality_for_both_families() {
    for k in 3..=10 {
        for c in [
            ClassicalCode::lk(k).unwrap(),
            ClassicalCode::lk_plus(k).unwrap(),
        ] {
            let g = dense(&c.generator);
            let ht = dense(&c.parity_check.transpose());
            let prod = dense_mul(&g, &ht, c.n(), c.parity_check.num_rows());
            assert!(prod.iter().flatten().all(|&b| b == 0), "{}", c.name);
            assert_eq!(dense_rank(&g, c.n()), k);
            assert_eq!(dense_rank(&dense(&c.parity_check), c.n()), c.n() - k);
        }
    }
}

#[test]
fn shapes() {
    let c = ClassicalCode::lk(3).unwrap();
    assert_eq!((c.n(), c.k()), (6, 3));
    let c = ClassicalCode::lk_plus(4).unwrap();
    assert_eq!((c.n(), c.k(), c.parity_check.num_rows()), (12, 4, 8));
    assert!(matches!(ClassicalCode::lk(2), Err(Error::Domain(_))));
    assert!(matches!(ClassicalCode::lk_plus(2), Err(Error::Domain(_))));
}

#[test]
fn codeword_list() {
    let l4 = ClassicalCode::lk(4).unwrap();
    let words: Vec<BitVec> = l4.codewords().unwrap().collect();
    assert_eq!(words.len(), 16);
    assert!(words[0].is_zero());
    assert_eq!(words[15].to_string(), "11111111");
    let mut got: Vec<String> = words.iter().map(ToString::to_string).collect();
    let mut want: Vec<String> = L4_CODEWORDS
        .iter()
        .map(|w| w.parse::<BitVec>().unwrap().to_string())
        .collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
    let listed_min = L4_CODEWORDS[1..]
        .iter()
        .map(|w| w.parse::<BitVec>().unwrap().weight())
        .min();
    assert_eq!(listed_min, Some(4));
}

#[test]
fn distances_match_reference_enumeration() {
    assert_eq!(ClassicalCode::lk(3).unwrap().min_distance().unwrap(), 3);
    assert_eq!(
        ClassicalCode::lk_plus(4).unwrap().min_distance().unwrap(),
        5
    );
    for k in 4..=8 {
        let c = ClassicalCode::lk(k).unwrap();
        assert_eq!(c.min_distance().unwrap(), 4, "L_{k}");
        assert_eq!(dense_min_weight(&dense(&c.generator)), 4);
    }
    for k in 5..=8 {
        let c = ClassicalCode::lk_plus(k).unwrap();
        assert_eq!(c.min_distance().unwrap(), 6, "L_{k}^+");
        assert_eq!(dense_min_weight(&dense(&c.generator)), 6);
    }
}

#[test]
fn dual_code() {
    let mut l4 = ClassicalCode::lk(4).unwrap();
    let (d, dd) = l4.certify().unwrap();
    assert_eq!((d, dd), (4, 4));
    let dual = l4.dual();
    assert_eq!(dual.k(), 4);
    assert_eq!(dual.min_distance().unwrap(), 4);
    assert_eq!(dual.d, Some(4));
    let back = dual.dual();
    let stacked = back.generator.vconcat(&l4.generator).unwrap();
    assert_eq!(stacked.rank(), l4.k());
    assert_eq!(l4.to_string(), "L_4 [8, 4, 4]");
}

#[test]
fn sub_exceeding_maps() {
    assert!(is_sub_exceeding(&[0, 0, 0]));
    assert!(is_sub_exceeding(&[0, 1, 2, 3]));
    assert!(!is_sub_exceeding(&[1, 0, 0]));
    assert!(!is_sub_exceeding(&[0, -1]));
}

#[test]
fn rejects_inconsistent_pair() {
    let g = BitMatrix::identity(2);
    let h = BitMatrix::from_dense(&[&[1, 0]]);
    assert!(ClassicalCode::new("bad", g, h).is_err());
}
