//! The finiteness system for equilateral cyclic pentagons in the variables
//! `(r12, r13, r14, r24, r25, r35, Q12, ..., Q35)` with `Q = r^(2-A)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::poly::{rat, Convention, LaurentPoly, MassPoly, Rational};
use crate::equations::Exponent;
use crate::geometry::{DistanceVector, FOUR_POINT_SUBSETS};
use crate::{Error, Result};

pub const NVARS: usize = 12;

pub const VARIABLES: [&str; NVARS] = [
    "r12", "r13", "r14", "r24", "r25", "r35", "Q12", "Q13", "Q14", "Q24", "Q25", "Q35",
];

/// Initial-form convention used for prevariety membership.
pub const PREVARIETY_CONVENTION: Convention = Convention::Max;

fn r_var(i: usize, j: usize) -> usize {
    DistanceVector::class_of(i, j)
}

fn q_var(i: usize, j: usize) -> usize {
    6 + DistanceVector::class_of(i, j)
}

/// A rational exponent `A = p / q` in lowest terms with `A ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalExponent {
    pub p: i64,
    pub q: i64,
}

impl RationalExponent {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let e = Exponent::rational(p, q)?;
        Self::try_from(e)
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.p.into(), self.q.into())
    }

    /// `A = 2`: every `Q` is identically one.
    pub fn is_degenerate(&self) -> bool {
        self.p == 2 * self.q
    }
}

impl TryFrom<Exponent> for RationalExponent {
    type Error = Error;
    fn try_from(e: Exponent) -> Result<Self> {
        match e.rational {
            Some((p, q)) => Ok(RationalExponent { p, q }),
            None => Err(Error::InvalidArgument(format!(
                "exponent {e} must be given as an exact rational p/q"
            ))),
        }
    }
}

impl std::str::FromStr for RationalExponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::try_from(s.parse::<Exponent>()?)
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl Serialize for RationalExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MassSpec {
    /// Masses stay symbolic; a coefficient counts iff it is a nonzero
    /// polynomial in `m1..m5`.
    Generic,
    Explicit([Rational; 5]),
}

impl MassSpec {
    fn mass(&self, k: usize, c: Rational) -> MassPoly {
        match self {
            MassSpec::Generic => MassPoly::mass(k, c),
            MassSpec::Explicit(m) => MassPoly::constant(&m[k - 1] * c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyKind {
    AlbouyChenciner,
    CayleyMenger,
    QRelation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemPoly {
    pub label: String,
    pub kind: PolyKind,
    pub poly: LaurentPoly,
}

#[derive(Clone, Debug)]
pub struct PolySystem {
    pub exponent: RationalExponent,
    pub polys: Vec<SystemPoly>,
}

impl PolySystem {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&SystemPoly> {
        self.polys.iter().find(|p| p.label == label)
    }
}

fn empty() -> LaurentPoly {
    LaurentPoly::new(NVARS).with_names(&VARIABLES)
}

fn unit(v: usize, p: i32) -> Vec<i32> {
    let mut e = vec![0; NVARS];
    e[v] += p;
    e
}

/// `f_ij = Σ_{k≠i} m_k (Q_ik r_ik^-2 − 1)(r_jk² − r_ik² − r_ij²)` with `r_jj = 0`,
/// denominators cleared.
fn albouy_chenciner(i: usize, j: usize, masses: &MassSpec) -> LaurentPoly {
    let mut f = empty();
    for k in (1..=5).filter(|&k| k != i) {
        // A_ijk as (exponent, sign) pairs.
        let mut a: Vec<(Vec<i32>, i64)> = Vec::new();
        if k == j {
            a.push((unit(r_var(i, j), 2), -2));
        } else {
            a.push((unit(r_var(j, k), 2), 1));
            a.push((unit(r_var(i, k), 2), -1));
            a.push((unit(r_var(i, j), 2), -1));
        }
        let mut qr = unit(q_var(i, k), 1);
        qr[r_var(i, k)] -= 2;
        for (e, s) in a {
            let lead: Vec<i32> = e.iter().zip(&qr).map(|(x, y)| x + y).collect();
            f.add_term(lead, &masses.mass(k, rat(s)));
            f.add_term(e, &masses.mass(k, rat(-s)));
        }
    }
    f.cleared()
}

/// Bordered 5×5 Cayley-Menger determinant of a four-point subset,
/// expanded over all permutations.
fn cayley_menger(subset: [usize; 4]) -> LaurentPoly {
    // Entry (a, b) as an optional exponent vector; None is a zero entry.
    let entry = |a: usize, b: usize| -> Option<Vec<i32>> {
        match (a, b) {
            (0, 0) => None,
            (0, _) | (_, 0) => Some(vec![0; NVARS]),
            _ if a == b => None,
            _ => Some(unit(r_var(subset[a - 1], subset[b - 1]), 2)),
        }
    };
    let mut out = empty();
    let mut perm = [0usize, 1, 2, 3, 4];
    heap_permutations(&mut perm, 5, &mut |p, sign| {
        let mut e = vec![0; NVARS];
        for (row, &col) in p.iter().enumerate() {
            match entry(row, col) {
                Some(x) => e.iter_mut().zip(&x).for_each(|(a, b)| *a += b),
                None => return,
            }
        }
        out.add_term(e, &MassPoly::constant(rat(sign)));
    });
    out
}

/// Visits all permutations of `p[..n]` with their signs (Heap's algorithm).
fn heap_permutations(p: &mut [usize; 5], n: usize, visit: &mut impl FnMut(&[usize; 5], i64)) {
    fn sign(p: &[usize; 5]) -> i64 {
        let mut s = 1;
        for a in 0..5 {
            for b in a + 1..5 {
                if p[a] > p[b] {
                    s = -s;
                }
            }
        }
        s
    }
    if n == 1 {
        visit(p, sign(p));
        return;
    }
    for i in 0..n - 1 {
        heap_permutations(p, n - 1, visit);
        if n % 2 == 0 {
            p.swap(i, n - 1);
        } else {
            p.swap(0, n - 1);
        }
    }
    heap_permutations(p, n - 1, visit);
}

/// `Q^q r^p − r^{2q}` for one distance class.
fn q_relation(class: usize, a: RationalExponent) -> LaurentPoly {
    let mut out = empty();
    let (p, q) = (a.p as i32, a.q as i32);
    let mut lead = unit(6 + class, q);
    lead[class] += p;
    out.add_term(lead, &MassPoly::constant(Rational::one()));
    out.add_term(unit(class, 2 * q), &MassPoly::constant(-Rational::one()));
    out
}

/// The 20 Albouy-Chenciner polynomials (with `λ̃ = 1`), the 5 Cayley-Menger
/// determinants and the 6 `Q`-defining binomials.
pub fn build_system(a: RationalExponent, masses: &MassSpec) -> PolySystem {
    let mut polys = Vec::with_capacity(31);
    for i in 1..=5 {
        for j in (1..=5).filter(|&j| j != i) {
            polys.push(SystemPoly {
                label: format!("f{i}{j}"),
                kind: PolyKind::AlbouyChenciner,
                poly: albouy_chenciner(i, j, masses),
            });
        }
    }
    for s in FOUR_POINT_SUBSETS {
        polys.push(SystemPoly {
            label: format!("cm{}{}{}{}", s[0], s[1], s[2], s[3]),
            kind: PolyKind::CayleyMenger,
            poly: cayley_menger(s),
        });
    }
    for (c, name) in DistanceVector::LABELS.iter().enumerate() {
        polys.push(SystemPoly {
            label: format!("q_{name}"),
            kind: PolyKind::QRelation,
            poly: q_relation(c, a),
        });
    }
    PolySystem { exponent: a, polys }
}

/// Rational weights on the six distance classes; the `Q` weights follow
/// from `w(Q) = (2 − A) w(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub [Rational; 6]);

impl WeightVector {
    pub fn from_ints(v: [i64; 6]) -> Self {
        WeightVector(v.map(rat))
    }

    pub fn full(&self, a: RationalExponent) -> Vec<Rational> {
        let factor = rat(2) - a.value();
        let mut w: Vec<Rational> = self.0.to_vec();
        w.extend(self.0.iter().map(|x| x * &factor));
        w
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn add(&self, o: &WeightVector) -> WeightVector {
        WeightVector(std::array::from_fn(|c| &self.0[c] + &o.0[c]))
    }

    /// Weights after relabeling points by `perm` (class `c` moves to `perm[c]`).
    pub fn permuted(&self, perm: [usize; 6]) -> WeightVector {
        let mut out = self.0.clone();
        for c in 0..6 {
            out[perm[c]] = self.0[c].clone();
        }
        WeightVector(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl std::str::FromStr for WeightVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if parts.len() != 6 {
            return Err(Error::Parse(format!("weight vector needs 6 entries, got {s:?}")));
        }
        let mut out: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
        for (slot, p) in out.iter_mut().zip(parts) {
            *slot = parse_rational(p.trim())?;
        }
        Ok(WeightVector(out))
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("cannot parse rational {s:?}"));
    let s = s.trim().trim_start_matches('+');
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|_| bad())?;
    let q: i64 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational::new(p.into(), q.into()))
}

/// Class permutation induced by a relabeling of the five points; `map[i-1]`
/// is the new label of point `i`.
pub fn class_permutation(map: [usize; 5]) -> [usize; 6] {
    const REPS: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];
    REPS.map(|(i, j)| DistanceVector::class_of(map[i - 1], map[j - 1]))
}

/// Rotation `i ↦ i + 1`.
pub const ROTATION: [usize; 5] = [2, 3, 4, 5, 1];
/// Reflection fixing the edge `{1, 2}`.
pub const REFLECTION: [usize; 5] = [2, 1, 5, 4, 3];

/// Variable permutation (on all 12 variables) induced by a point relabeling.
pub fn variable_permutation(map: [usize; 5]) -> Vec<usize> {
    let c = class_permutation(map);
    (0..NVARS).map(|v| if v < 6 { c[v] } else { 6 + c[v - 6] }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub polynomial: String,
    pub initial_term: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<Witness>,
}

/// Membership in the prevariety: every initial form has at least two terms.
pub fn in_prevariety(w: &WeightVector, system: &PolySystem) -> Membership {
    in_prevariety_with(w, system, PREVARIETY_CONVENTION)
}

pub fn in_prevariety_with(w: &WeightVector, system: &PolySystem, convention: Convention) -> Membership {
    let full = w.full(system.exponent);
    for sp in &system.polys {
        let init = sp.poly.initial_form(&full, convention);
        if init.len() < 2 {
            let initial_term = init.to_string();
            return Membership {
                member: false,
                witness: Some(Witness {
                    polynomial: sp.label.clone(),
                    initial_term,
                }),
            };
        }
    }
    Membership {
        member: true,
        witness: None,
    }
}

/// True iff the weight vector has a strictly negative coordinate sum.
pub fn negative_sum(w: &WeightVector) -> bool {
    w.sum().is_negative()
}
