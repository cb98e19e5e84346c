use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use super::form::{generator_multiplier, generator_values};
use super::qz::QmodZ;
use super::LinkingForm;
use crate::knotio::Definiteness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Obstructed,
    NotObstructed,
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Test {
    MobiusCyclic,
    MobiusP2q,
    KleinDiscriminant,
    Definiteness,
}

impl Test {
    pub fn id(self) -> &'static str {
        match self {
            Test::MobiusCyclic => "mobius-cyclic",
            Test::MobiusP2q => "mobius-p2q",
            Test::KleinDiscriminant => "klein-discriminant",
            Test::Definiteness => "definiteness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub test: Test,
    pub result: Verdict,
    /// A group element certifying `NotObstructed`, as generator coefficients.
    pub witness: Option<Vec<u64>>,
    pub detail: String,
}

impl ObstructionVerdict {
    pub fn inapplicable(test: Test, why: impl Into<String>) -> Self {
        ObstructionVerdict {
            test,
            result: Verdict::Inapplicable,
            witness: None,
            detail: why.into(),
        }
    }

    pub fn is_obstructed(&self) -> bool {
        self.result == Verdict::Obstructed
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as (prime, exponent) pairs.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Searches generator orbits of both signs for one of `targets`.
fn search_generators(f: &LinkingForm, targets: &[QmodZ]) -> Option<(u64, QmodZ)> {
    let orbit = generator_values(f).ok()?;
    targets.iter().find(|t| orbit.contains(t)).map(|&t| {
        let m = generator_multiplier(f, t).expect("orbit member has a multiplier");
        (m, t)
    })
}

fn both_signs(targets: &[QmodZ]) -> Vec<QmodZ> {
    let mut all: Vec<QmodZ> = targets.iter().flat_map(|t| [*t, -*t]).collect();
    all.sort();
    all.dedup();
    all
}

/// Möbius band test for `H₁ = ℤ_n` with every prime exponent of `n` odd:
/// a bounding Möbius band forces a generator with `λ(a, a) = ±1/n`.
pub fn mobius_obstruction_cyclic(f: &LinkingForm) -> ObstructionVerdict {
    let test = Test::MobiusCyclic;
    if !f.group().is_cyclic() {
        return ObstructionVerdict::inapplicable(test, format!("H1 = {} is not cyclic", f.group()));
    }
    let n = f.group().order();
    if factorize(n).iter().any(|&(_, e)| e % 2 == 0) {
        return ObstructionVerdict::inapplicable(test, format!("{n} has a prime with even exponent"));
    }
    let targets = both_signs(&[QmodZ::new(1, n)]);
    verdict_from_search(f, test, &targets, format!("±1/{n}"))
}

/// Möbius band test for `H₁ = ℤ_{p²q}`, `p` prime, `q > 1` squarefree and
/// prime to `p`. A bounding Möbius band splits `λ` as a rank-one form plus a
/// metabolic form, so either a generator has `λ(a, a) = ±1/p²q`, or the
/// order-`q` subgroup carries `±1/q` on one of its generators (the `ℤ_{p²}`
/// part being the metabolic summand).
pub fn mobius_obstruction_p2q(f: &LinkingForm, p: u64, q: u64) -> ObstructionVerdict {
    let test = Test::MobiusP2q;
    if !f.group().is_cyclic() {
        return ObstructionVerdict::inapplicable(test, format!("H1 = {} is not cyclic", f.group()));
    }
    let n = f.group().order();
    if !is_prime(p) || q < 2 || !is_squarefree(q) || q.gcd(&p) != 1 || p * p * q != n {
        return ObstructionVerdict::inapplicable(test, format!("{n} is not p^2 q with p = {p}, q = {q}"));
    }
    let v = f.generator_value().expect("cyclic");
    if let Some((m, t)) = search_generators(f, &both_signs(&[QmodZ::new(1, n)])) {
        return ObstructionVerdict {
            test,
            result: Verdict::NotObstructed,
            witness: Some(vec![m]),
            detail: format!("generator {m}g has self-linking {t} (λ(g,g) = {v})"),
        };
    }
    let b = p * p;
    let w = f.self_pair(&[b]);
    let hit = (1..q).filter(|m| m.gcd(&q) == 1).find_map(|m| {
        let t = QmodZ::new(((m * m % q) * w.over(q).expect("order q") % q) as i64, q);
        (t == QmodZ::new(1, q) || t == QmodZ::new(-1, q)).then_some((m, t))
    });
    match hit {
        Some((m, t)) => ObstructionVerdict {
            test,
            result: Verdict::NotObstructed,
            witness: Some(vec![m * b % n]),
            detail: format!(
                "order-{q} element {}g has self-linking {t}; Z{} is metabolic",
                m * b % n,
                b
            ),
        },
        None => ObstructionVerdict {
            test,
            result: Verdict::Obstructed,
            witness: None,
            detail: format!("λ(g,g) = {v}: no generator reaches ±1/{n} and λ on Z{q} is {w}, not ±1/{q} up to squares"),
        },
    }
}

/// The `p²q` split of `n`, if there is exactly one way to write it.
pub fn p2q_split(n: u64) -> Option<(u64, u64)> {
    let fac = factorize(n);
    let squares: Vec<u64> = fac.iter().filter(|&&(_, e)| e == 2).map(|&(p, _)| p).collect();
    if squares.len() != 1 || fac.iter().any(|&(_, e)| e > 2) {
        return None;
    }
    let p = squares[0];
    let q = n / (p * p);
    (q > 1).then_some((p, q))
}

fn verdict_from_search(f: &LinkingForm, test: Test, targets: &[QmodZ], wanted: String) -> ObstructionVerdict {
    let v = f.generator_value().expect("cyclic checked by caller");
    // the target sets are closed under negation, so this covers ±λ
    match search_generators(f, targets) {
        Some((m, t)) => ObstructionVerdict {
            test,
            result: Verdict::NotObstructed,
            witness: Some(vec![m]),
            detail: format!("generator {m}g has self-linking {t} (λ(g,g) = {v})"),
        },
        None => ObstructionVerdict {
            test,
            result: Verdict::Obstructed,
            witness: None,
            detail: format!("orbit of λ(g,g) = {v} under units squared misses {wanted}"),
        },
    }
}

/// Discriminant test for `H₁ = ℤ_p ⊕ ℤ_p`: a punctured Klein bottle forces
/// `det(p·λ)` to be `±` a square mod `p`.
pub fn klein_discriminant(f: &LinkingForm, p: u64) -> ObstructionVerdict {
    let test = Test::KleinDiscriminant;
    if f.group().factors() != [p, p] || !is_prime(p) {
        return ObstructionVerdict::inapplicable(test, format!("H1 = {} is not Z{p} + Z{p}", f.group()));
    }
    let v = f.values();
    let entry = |i: usize, j: usize| v[i][j].over(p).expect("denominators divide p") % p;
    let det = (entry(0, 0) * entry(1, 1) + p * p - entry(0, 1) * entry(1, 0) % p) % p;
    let squares: HashSet<u64> = (1..p).map(|x| x * x % p).collect();
    let ok = squares.contains(&det) || squares.contains(&((p - det) % p));
    ObstructionVerdict {
        test,
        result: if ok {
            Verdict::NotObstructed
        } else {
            Verdict::Obstructed
        },
        witness: None,
        detail: format!("det(p·λ) = {det} mod {p}; squares {{{}}}", sorted(&squares)),
    }
}

fn sorted(s: &HashSet<u64>) -> String {
    let mut v: Vec<_> = s.iter().copied().collect();
    v.sort();
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// A subgroup `H` with `|H|² = |group|` on which `λ` vanishes, if one exists.
///
/// Exhaustive: grows subgroups one isotropic generator at a time.
pub fn metabolizer(f: &LinkingForm) -> Option<Vec<Vec<u64>>> {
    let grp = f.group();
    let n = grp.order();
    let s = (1..=n).find(|s| s * s >= n)?;
    if s * s != n {
        return None;
    }
    let isotropic: Vec<Vec<u64>> = grp.elements().filter(|x| f.self_pair(x).is_zero()).collect();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let start = vec![grp.zero()];
    grow(f, &isotropic, &start, s, &mut seen)
}

fn grow(
    f: &LinkingForm,
    isotropic: &[Vec<u64>],
    h: &[Vec<u64>],
    target: u64,
    seen: &mut HashSet<Vec<u64>>,
) -> Option<Vec<Vec<u64>>> {
    if h.len() as u64 == target {
        return Some(h.to_vec());
    }
    let grp = f.group();
    let members: HashSet<u64> = h.iter().map(|x| grp.index_of(x)).collect();
    for x in isotropic {
        if members.contains(&grp.index_of(x)) || !h.iter().all(|y| f.pair(x, y).is_zero()) {
            continue;
        }
        let next = closure(f, h, x);
        let size = next.len() as u64;
        if !target.is_multiple_of(size) {
            continue;
        }
        let mut key: Vec<u64> = next.iter().map(|y| grp.index_of(y)).collect();
        key.sort();
        if !seen.insert(key) {
            continue;
        }
        if let Some(found) = grow(f, isotropic, &next, target, seen) {
            return Some(found);
        }
    }
    None
}

/// The subgroup generated by `h` and `x`.
fn closure(f: &LinkingForm, h: &[Vec<u64>], x: &[u64]) -> Vec<Vec<u64>> {
    let grp = f.group();
    let ord = grp.element_order(x);
    let mut out = Vec::new();
    let mut idx = HashSet::new();
    for m in 0..ord {
        let mx = grp.scale(m, x);
        for y in h {
            let z = grp.add(&mx, y);
            if idx.insert(grp.index_of(&z)) {
                out.push(z);
            }
        }
    }
    out
}

pub fn metabolic_test(f: &LinkingForm) -> bool {
    metabolizer(f).is_some()
}

/// Compares the sign of a `±1/n` generator with the definiteness required of
/// a bounding 4-manifold. The form's sign must already be fixed.
pub fn definiteness_consistency(f: &LinkingForm, required: Option<Definiteness>) -> ObstructionVerdict {
    let test = Test::Definiteness;
    let Some(required) = required else {
        return ObstructionVerdict::inapplicable(test, "no required definiteness");
    };
    if !f.sign_fixed() {
        return ObstructionVerdict::inapplicable(test, "form sign not fixed");
    }
    if !f.group().is_cyclic() || f.group().order() < 2 {
        return ObstructionVerdict::inapplicable(test, format!("H1 = {} is not a nontrivial cyclic group", f.group()));
    }
    let n = f.group().order();
    let plus = generator_multiplier(f, QmodZ::new(1, n));
    let minus = generator_multiplier(f, QmodZ::new(-1, n));
    let (eps, m) = match (plus, minus) {
        (None, None) => {
            return ObstructionVerdict::inapplicable(test, format!("no generator with self-linking ±1/{n}"))
        }
        (Some(m), Some(_)) => {
            return ObstructionVerdict {
                test,
                result: Verdict::NotObstructed,
                witness: Some(vec![m]),
                detail: format!("both +1/{n} and -1/{n} occur; sign undetermined"),
            }
        }
        (Some(m), None) => (1i8, m),
        (None, Some(m)) => (-1i8, m),
    };
    let form_sign = if eps > 0 { "positive" } else { "negative" };
    let req = if required.sign() > 0 { "positive" } else { "negative" };
    if eps == required.sign() {
        ObstructionVerdict {
            test,
            result: Verdict::NotObstructed,
            witness: Some(vec![m]),
            detail: format!("{eps:+}/{n} form is {form_sign}, consistent with {req} definite"),
        }
    } else {
        ObstructionVerdict {
            test,
            result: Verdict::Obstructed,
            witness: Some(vec![m]),
            detail: format!("{eps:+}/{n} form is {form_sign}, contradicting {req} definite"),
        }
    }
}
