//! Worked examples with known answers.

use std::collections::BTreeSet;
use std::path::PathBuf;

use knotgenus::bounds::{analyze, classify_all, Options, Status, TargetValue};
use knotgenus::exactalg::{det, det_cofactor, inverse, signature, smith_normal_form, IntMatrix};
use knotgenus::knotio::{load_certificates, load_dataset, Definiteness, KnotRecord};
use knotgenus::linkform::{
    definiteness_consistency, generator_values, homology, klein_discriminant, linking_form, metabolic_test,
    metabolizer, mobius_obstruction_cyclic, mobius_obstruction_p2q, p2q_split, FiniteAbelianGroup, LinkingForm, QmodZ,
    Verdict,
};
use knotgenus::planar::{calibrate, Convention};
use num_bigint::BigInt;
use num_rational::BigRational;

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(file)
}

fn records() -> Vec<KnotRecord> {
    load_dataset(data("knots.csv")).unwrap()
}

fn q(s: &str) -> QmodZ {
    s.parse().unwrap()
}

fn printed_11n155() -> IntMatrix {
    IntMatrix::from_i64(&[&[3, -1, 0, -1], &[-1, 5, -1, 0], &[0, -1, 0, 2], &[-1, 0, 2, 0]])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut p = p.clone();
            p.insert(i, n - 1);
            out.push(p);
        }
    }
    out
}

fn congruent_by_permutation(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows()
        && permutations(a.rows()).iter().any(|p| {
            let pa = a.permuted(p);
            pa == *b || pa.neg() == *b
        })
}

#[test]
fn printed_matrix_inverse() {
    let g = printed_11n155();
    assert_eq!(det(&g).unwrap(), BigInt::from(-51));
    assert_eq!(det_cofactor(&g).unwrap(), BigInt::from(-51));
    let inv = inverse(&g).unwrap();
    let want = [[20, 6, 10, 3], [6, 12, 3, 6], [10, 3, 5, 27], [3, 6, 27, 3]];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(inv[(i, j)], BigRational::new(want[i][j].into(), 51.into()));
        }
    }
    let snf = smith_normal_form(&g);
    assert_eq!(snf.diagonal(), [1, 1, 1, 51].map(BigInt::from));
    assert_eq!(signature(&g).unwrap(), 2);
}

#[test]
fn goeritz_11n155() {
    let recs = records();
    let rec = recs.iter().find(|r| r.name == "11n155").unwrap();
    let a = analyze(rec, &Options::default()).unwrap();
    let gd = a.goeritz.unwrap();
    assert!(congruent_by_permutation(&gd.g, &printed_11n155()), "G = {}", gd.g);
    assert_eq!(det(&gd.g).unwrap(), BigInt::from(-51));
}

#[test]
fn linking_form_11n155() {
    let f = linking_form(&printed_11n155()).unwrap();
    assert_eq!(f.group().factors(), [51]);
    let orbit = generator_values(&f).unwrap();
    assert!(orbit.contains(&q("20/51")) || orbit.contains(&q("31/51")));
    assert!(!orbit.contains(&q("1/51")) && !orbit.contains(&q("50/51")));
    let brute: Vec<u64> = (1..51)
        .filter(|m| 20 * m * m % 51 == 1 || 20 * m * m % 51 == 50)
        .collect();
    assert!(brute.is_empty());
    assert_eq!(mobius_obstruction_cyclic(&f).result, Verdict::Obstructed);
}

#[test]
fn z5_orbit() {
    let f = LinkingForm::cyclic(5, q("1/5")).unwrap();
    let orbit: Vec<QmodZ> = generator_values(&f).unwrap().into_iter().collect();
    assert_eq!(orbit, [q("1/5"), q("4/5")]);
    let g = LinkingForm::cyclic(5, q("2/5")).unwrap();
    let orbit: Vec<QmodZ> = generator_values(&g).unwrap().into_iter().collect();
    assert_eq!(orbit, [q("2/5"), q("3/5")]);
}

#[test]
fn cyclic_obstruction() {
    let ok = LinkingForm::cyclic(5, q("1/5")).unwrap();
    let v = mobius_obstruction_cyclic(&ok);
    assert_eq!(v.result, Verdict::NotObstructed);
    assert_eq!(v.witness, Some(vec![1]));
    let bad = LinkingForm::cyclic(5, q("2/5")).unwrap();
    assert_eq!(mobius_obstruction_cyclic(&bad).result, Verdict::Obstructed);
    // 3 is a non-residue mod 7 but -3 is not
    let seven = LinkingForm::cyclic(7, q("3/7")).unwrap();
    assert_eq!(mobius_obstruction_cyclic(&seven).result, Verdict::NotObstructed);
    let nine = LinkingForm::cyclic(9, q("1/9")).unwrap();
    assert_eq!(mobius_obstruction_cyclic(&nine).result, Verdict::Inapplicable);
}

#[test]
fn p2q_cases() {
    assert_eq!(p2q_split(63), Some((3, 7)));
    assert_eq!(p2q_split(45), Some((3, 5)));
    assert_eq!(p2q_split(51), None);
    assert_eq!(p2q_split(9), None);
    assert_eq!(p2q_split(36), None);
    assert_eq!(p2q_split(27), None);

    let unit = LinkingForm::cyclic(63, q("1/63")).unwrap();
    assert_eq!(mobius_obstruction_p2q(&unit, 3, 7).result, Verdict::NotObstructed);
    // λ on Z5 is 3/5, which is not ±1/5 times a square
    let bad = LinkingForm::cyclic(45, q("2/45")).unwrap();
    assert_eq!(mobius_obstruction_p2q(&bad, 3, 5).result, Verdict::Obstructed);
    // every form on Z7 is ±1/7 up to squares
    let z7 = LinkingForm::cyclic(63, q("11/63")).unwrap();
    assert_eq!(mobius_obstruction_p2q(&z7, 3, 7).result, Verdict::NotObstructed);
    assert_eq!(mobius_obstruction_p2q(&unit, 3, 5).result, Verdict::Inapplicable);
}

fn diag(p: u64, a: &str, b: &str, c: &str) -> LinkingForm {
    LinkingForm::new(
        FiniteAbelianGroup::new(vec![p, p]).unwrap(),
        vec![vec![q(a), q(c)], vec![q(c), q(b)]],
    )
    .unwrap()
}

#[test]
fn klein_cases() {
    assert_eq!(
        klein_discriminant(&diag(5, "1/5", "2/5", "0"), 5).result,
        Verdict::Obstructed
    );
    assert_eq!(
        klein_discriminant(&diag(5, "1/5", "1/5", "0"), 5).result,
        Verdict::NotObstructed
    );
    assert_eq!(
        klein_discriminant(&diag(5, "0", "0", "1/5"), 5).result,
        Verdict::NotObstructed
    );
    assert_eq!(
        klein_discriminant(&diag(3, "1/3", "2/3", "0"), 3).result,
        Verdict::NotObstructed
    );
    let cyc = LinkingForm::cyclic(5, q("1/5")).unwrap();
    assert_eq!(klein_discriminant(&cyc, 5).result, Verdict::Inapplicable);
}

#[test]
fn metabolic_cases() {
    assert!(metabolic_test(&LinkingForm::cyclic(9, q("1/9")).unwrap()));
    assert!(metabolic_test(&LinkingForm::cyclic(25, q("2/25")).unwrap()));
    assert!(!metabolic_test(&LinkingForm::cyclic(3, q("1/3")).unwrap()));
    assert!(!metabolic_test(&LinkingForm::cyclic(15, q("1/15")).unwrap()));
    assert!(metabolic_test(&diag(5, "0", "0", "1/5")));
    assert!(metabolic_test(&diag(5, "1/5", "4/5", "0")));
    assert!(!metabolic_test(&diag(3, "1/3", "1/3", "0")));
    let f = diag(5, "1/5", "1/5", "0");
    let h = metabolizer(&f).unwrap();
    assert_eq!(h.len(), 5);
    for x in &h {
        for y in &h {
            assert!(f.pair(x, y).is_zero());
        }
    }
}

#[test]
fn definiteness_cases() {
    let f = LinkingForm::cyclic(3, q("1/3")).unwrap();
    assert_eq!(
        definiteness_consistency(&f, Some(Definiteness::Negative)).result,
        Verdict::Inapplicable
    );
    let f = f.with_sign(1);
    assert_eq!(
        definiteness_consistency(&f, Some(Definiteness::Negative)).result,
        Verdict::Obstructed
    );
    assert_eq!(
        definiteness_consistency(&f, Some(Definiteness::Positive)).result,
        Verdict::NotObstructed
    );
    assert_eq!(definiteness_consistency(&f, None).result, Verdict::Inapplicable);
    let five = LinkingForm::cyclic(5, q("1/5")).unwrap().with_sign(1);
    assert_eq!(
        definiteness_consistency(&five, Some(Definiteness::Negative)).result,
        Verdict::NotObstructed
    );
    let neither = LinkingForm::cyclic(5, q("2/5")).unwrap().with_sign(1);
    assert_eq!(
        definiteness_consistency(&neither, Some(Definiteness::Negative)).result,
        Verdict::Inapplicable
    );
}

#[test]
fn homology_examples() {
    assert_eq!(homology(&IntMatrix::from_i64(&[&[3]])).unwrap().factors(), [3]);
    let g = IntMatrix::from_i64(&[&[5, 0], &[0, 5]]);
    assert_eq!(homology(&g).unwrap().factors(), [5, 5]);
    let g = IntMatrix::from_i64(&[&[2, 1], &[1, 2]]);
    assert_eq!(homology(&g).unwrap().factors(), [3]);
    let f = linking_form(&g).unwrap();
    let orbit = generator_values(&f).unwrap();
    assert!(orbit.contains(&q("2/3")));
}

#[test]
fn dataset_calibrates() {
    let recs = records();
    assert_eq!(recs.len(), 185);
    let cal = calibrate(&recs);
    assert!(cal.is_exact(), "{:?}", cal.mismatches);
    assert_eq!(cal.convention, Convention::CALIBRATED);
    assert_eq!(cal.checked, 185);
}

#[test]
fn special_case_11n38() {
    let recs = records();
    let rec = recs.iter().find(|r| r.name == "11n38").unwrap();
    let a = analyze(rec, &Options::default()).unwrap();
    let f = a.form.unwrap();
    assert_eq!(f.group().factors(), [3]);
    let def = a.verdicts.iter().find(|v| v.test.id() == "definiteness").unwrap();
    assert_eq!(def.result, Verdict::Obstructed);
}

#[test]
fn dataset_classification() {
    let recs = records();
    let certs = load_certificates(data("certificates.csv")).unwrap();
    let c = classify_all(&recs, &certs, &Options::default()).unwrap();
    assert!(c.results.iter().all(|r| r.status() != Status::Inconsistent));
    for (rec, r) in recs.iter().zip(&c.results) {
        if rec.slice {
            assert_eq!((r.bounds.lower, r.bounds.upper), (1, Some(1)), "{}", rec.name);
        }
        assert!(r.bounds.lower >= 1);
    }
    let r38 = c.results.iter().find(|r| r.name == "11n38").unwrap();
    assert_eq!((r38.bounds.lower, r38.bounds.upper), (2, Some(2)));
    // a target resolved from the run itself
    let r165 = c.results.iter().find(|r| r.name == "11n165").unwrap();
    assert!(r165
        .certificates
        .iter()
        .any(|rc| rc.cert.target == "11n46" && rc.target == TargetValue::Gamma(1)));
    let ones: BTreeSet<&str> = c
        .results
        .iter()
        .filter(|r| r.bounds.value() == Some(1))
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(ones.len(), 121);
}

#[test]
fn report_is_deterministic_and_replays() {
    use knotgenus::report::{Inputs, Report};
    let mut recs = records();
    let mut certs = load_certificates(data("certificates.csv")).unwrap();
    let a = Report::build(Inputs {
        options: Options::default(),
        records: recs.clone(),
        certificates: certs.clone(),
    })
    .unwrap();
    recs.reverse();
    certs.rotate_left(17);
    let b = Report::build(Inputs {
        options: Options::default(),
        records: recs,
        certificates: certs,
    })
    .unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(Report::replay(&a.to_json()).unwrap().to_json(), a.to_json());
    assert_eq!(a.summary.total, 185);
    assert_eq!(a.summary.inconsistent, 0);
    let csv = a.summary_csv();
    assert_eq!(csv.lines().count(), 186);
    assert!(csv.lines().any(|l| l.starts_with("11n38,Z3,2,2,determined,")));
}
