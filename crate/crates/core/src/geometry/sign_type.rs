//! Sign types of symmetric equilateral pentagons: which oriented areas are
//! positive and which diagonals exceed the unit edge.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::symmetric::{radicand, symmetric_quantities, Branch, SymmetricQuantities, Y4_MAX};
use super::SymmetricShape;
use crate::error::{Error, Result};

/// Quantities closer to their critical value than this are treated as on a
/// boundary.
pub const GUARD: f64 = 1e-10;

/// A condition holding with equality on a type boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degeneracy {
    Area123Zero,
    Area134Zero,
    Area135Zero,
    Area145Zero,
    Area345Zero,
    R13Unit,
    R14Unit,
    R35Unit,
    /// `q3 = q5`.
    Collision35,
    /// `q1 = q3` (and `q2 = q5`).
    Collision13,
    Y4Zero,
    /// The two branches meet where the radicand vanishes.
    BranchJunction,
    /// No listed variant matched and nothing was degenerate.
    Unmatched,
}

impl Degeneracy {
    pub fn describe(self) -> &'static str {
        match self {
            Degeneracy::Area123Zero => "Δ123 = 0",
            Degeneracy::Area134Zero => "Δ134 = 0",
            Degeneracy::Area135Zero => "Δ135 = 0",
            Degeneracy::Area145Zero => "Δ145 = 0",
            Degeneracy::Area345Zero => "Δ345 = 0",
            Degeneracy::R13Unit => "r13 = 1",
            Degeneracy::R14Unit => "r14 = 1",
            Degeneracy::R35Unit => "r35 = 1",
            Degeneracy::Collision35 => "q3 = q5",
            Degeneracy::Collision13 => "q1 = q3",
            Degeneracy::Y4Zero => "y4 = 0",
            Degeneracy::BranchJunction => "branch junction",
            Degeneracy::Unmatched => "unmatched sign pattern",
        }
    }

    /// Singular for the central-configuration equations.
    pub fn is_collision(self) -> bool {
        matches!(
            self,
            Degeneracy::Collision13 | Degeneracy::Collision35 | Degeneracy::Y4Zero
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignType {
    A1,
    A2,
    A3,
    A4,
    A5,
    B1,
    B2,
    B3,
    B4,
    B5,
    Boundary(Vec<Degeneracy>),
}

impl SignType {
    pub const BRANCH_A: [SignType; 5] = [
        SignType::A1,
        SignType::A2,
        SignType::A3,
        SignType::A4,
        SignType::A5,
    ];
    pub const BRANCH_B: [SignType; 5] = [
        SignType::B1,
        SignType::B2,
        SignType::B3,
        SignType::B4,
        SignType::B5,
    ];

    pub fn branch(&self) -> Option<Branch> {
        use SignType::*;
        match self {
            A1 | A2 | A3 | A4 | A5 => Some(Branch::A),
            B1 | B2 | B3 | B4 | B5 => Some(Branch::B),
            Boundary(_) => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, SignType::Boundary(_))
    }
}

impl fmt::Display for SignType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SignType::*;
        let s = match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            A4 => "A4",
            A5 => "A5",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            Boundary(d) => {
                let parts: Vec<_> = d.iter().map(|x| x.describe()).collect();
                return write!(f, "boundary({})", parts.join(", "));
            }
        };
        f.write_str(s)
    }
}

impl FromStr for SignType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use SignType::*;
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A1" => A1,
            "A2" => A2,
            "A3" => A3,
            "A4" => A4,
            "A5" => A5,
            "B1" => B1,
            "B2" => B2,
            "B3" => B3,
            "B4" => B4,
            "B5" => B5,
            other => return Err(Error::Parse(format!("unknown sign type {other:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Quantity {
    A123,
    A124,
    A134,
    A135,
    A145,
    A345,
    R13,
    R14,
    R35,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Allowed {
    Pos,
    Neg,
    NonNeg,
}

impl Quantity {
    const ALL: [Quantity; 9] = [
        Quantity::A123,
        Quantity::A124,
        Quantity::A134,
        Quantity::A135,
        Quantity::A145,
        Quantity::A345,
        Quantity::R13,
        Quantity::R14,
        Quantity::R35,
    ];

    fn value(self, q: &SymmetricQuantities<f64>) -> f64 {
        match self {
            Quantity::A123 => q.area123,
            Quantity::A124 => q.area124,
            Quantity::A134 => q.area134,
            Quantity::A135 => q.area135,
            Quantity::A145 => q.area145,
            Quantity::A345 => q.area345,
            Quantity::R13 => q.r13_sq.sqrt() - 1.0,
            Quantity::R14 => q.r14_sq.sqrt() - 1.0,
            Quantity::R35 => q.r35_sq.sqrt() - 1.0,
        }
    }

    fn degeneracy(self) -> Degeneracy {
        match self {
            Quantity::A123 => Degeneracy::Area123Zero,
            Quantity::A124 => Degeneracy::Y4Zero,
            Quantity::A134 => Degeneracy::Area134Zero,
            Quantity::A135 => Degeneracy::Area135Zero,
            Quantity::A145 => Degeneracy::Area145Zero,
            Quantity::A345 => Degeneracy::Area345Zero,
            Quantity::R13 => Degeneracy::R13Unit,
            Quantity::R14 => Degeneracy::R14Unit,
            Quantity::R35 => Degeneracy::R35Unit,
        }
    }
}

use Allowed::*;
use Quantity::*;

const A_COMMON: [(Quantity, Allowed); 5] =
    [(A123, Pos), (A124, Pos), (A135, Pos), (A145, Pos), (R13, Pos)];
const B_COMMON: [(Quantity, Allowed); 3] = [(A124, Pos), (A145, Neg), (R35, Neg)];

fn conditions(t: &SignType) -> Vec<(Quantity, Allowed)> {
    let (common, own): (&[(Quantity, Allowed)], [(Quantity, Allowed); 6]) = match t {
        SignType::A1 => (&A_COMMON, [(A134, Neg), (A345, Neg), (R14, Neg), (R35, Neg), (A124, Pos), (A124, Pos)]),
        SignType::A2 => (&A_COMMON, [(A134, Neg), (A345, Neg), (R14, Neg), (R35, Pos), (A124, Pos), (A124, Pos)]),
        SignType::A3 => (&A_COMMON, [(A134, Pos), (A345, Neg), (R14, Neg), (R35, Pos), (A124, Pos), (A124, Pos)]),
        SignType::A4 => (&A_COMMON, [(A134, Pos), (A345, Pos), (R14, Pos), (R35, Pos), (A124, Pos), (A124, Pos)]),
        SignType::A5 => (&A_COMMON, [(A134, Pos), (A345, Pos), (R14, Pos), (R35, Neg), (A124, Pos), (A124, Pos)]),
        SignType::B1 => (&B_COMMON, [(A123, Neg), (A134, Pos), (A135, Neg), (A345, Pos), (R13, Pos), (R14, Neg)]),
        SignType::B2 => (&B_COMMON, [(A123, Neg), (A134, Pos), (A135, Pos), (A345, Neg), (R13, Neg), (R14, Neg)]),
        SignType::B3 => (&B_COMMON, [(A123, Pos), (A134, Neg), (A135, Neg), (A345, Neg), (R13, Neg), (R14, Pos)]),
        SignType::B4 => (&B_COMMON, [(A123, Pos), (A134, NonNeg), (A135, Neg), (A345, Neg), (R13, Neg), (R14, Pos)]),
        SignType::B5 => (&B_COMMON, [(A123, Pos), (A134, Pos), (A135, Pos), (A345, Pos), (R13, Pos), (R14, Pos)]),
        SignType::Boundary(_) => return Vec::new(),
    };
    common.iter().chain(own.iter()).copied().collect()
}

fn sign_of(v: f64) -> i8 {
    if v > GUARD {
        1
    } else if v < -GUARD {
        -1
    } else {
        0
    }
}

fn satisfied(sign: i8, allowed: Allowed) -> bool {
    match allowed {
        Pos => sign > 0,
        Neg => sign < 0,
        NonNeg => sign >= 0,
    }
}

fn degeneracies(shape: &SymmetricShape, q: &SymmetricQuantities<f64>) -> Vec<Degeneracy> {
    let mut out: Vec<Degeneracy> = Quantity::ALL
        .iter()
        .filter(|qt| sign_of(qt.value(q)) == 0)
        .map(|qt| qt.degeneracy())
        .collect();
    if q.x3.abs() <= GUARD {
        out.push(Degeneracy::Collision35);
    }
    if q.r13_sq.abs() <= GUARD {
        out.push(Degeneracy::Collision13);
    }
    if radicand(shape.y4).abs() <= GUARD {
        out.push(Degeneracy::BranchJunction);
    }
    out.sort();
    out.dedup();
    out
}

/// Sign type of a symmetric shape, or the list of boundary conditions it sits
/// on when no variant's strict conditions hold.
pub fn classify_sign_type(shape: &SymmetricShape) -> SignType {
    let q = symmetric_quantities(shape.y4, shape.branch);
    let candidates = match shape.branch {
        Branch::A => SignType::BRANCH_A,
        Branch::B => SignType::BRANCH_B,
    };
    let degens = degeneracies(shape, &q);
    let collision_like = degens.iter().any(|d| {
        d.is_collision() || *d == Degeneracy::BranchJunction
    });
    if !collision_like {
        for t in candidates {
            if conditions(&t)
                .iter()
                .all(|(qt, allowed)| satisfied(sign_of(qt.value(&q)), *allowed))
            {
                return t;
            }
        }
    }
    if degens.is_empty() {
        SignType::Boundary(vec![Degeneracy::Unmatched])
    } else {
        SignType::Boundary(degens)
    }
}

/// Open `y4`-interval on which one sign type holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignTypeWindow {
    pub sign_type: SignType,
    pub branch: Branch,
    pub lo: f64,
    pub hi: f64,
    pub lo_boundary: Vec<Degeneracy>,
    pub hi_boundary: Vec<Degeneracy>,
}

impl SignTypeWindow {
    pub fn lo_singular(&self) -> bool {
        self.lo_boundary.iter().any(|d| d.is_collision())
    }

    pub fn hi_singular(&self) -> bool {
        self.hi_boundary.iter().any(|d| d.is_collision())
    }

    pub fn contains(&self, y4: f64) -> bool {
        self.lo < y4 && y4 < self.hi
    }

    /// Closed subwindow pulled in by `inset · width` at singular ends only.
    pub fn closed_subwindow(&self, inset: f64) -> (f64, f64) {
        let w = self.hi - self.lo;
        let lo = if self.lo_singular() { self.lo + inset * w } else { self.lo };
        let hi = if self.hi_singular() { self.hi - inset * w } else { self.hi };
        (lo, hi)
    }
}

type Boundary = fn(&SymmetricQuantities<f64>) -> f64;

/// Functions whose sign changes delimit the sign types.
const BOUNDARY_FUNCTIONS: [(Degeneracy, Boundary); 9] = [
    (Degeneracy::Area123Zero, |q| q.area123),
    (Degeneracy::Area134Zero, |q| q.area134),
    (Degeneracy::Area145Zero, |q| q.area145),
    (Degeneracy::Area345Zero, |q| q.y4 - q.y3),
    (Degeneracy::Collision35, |q| q.x3),
    (Degeneracy::Collision13, |q| q.x3 + 0.5),
    (Degeneracy::R13Unit, |q| q.x3),
    (Degeneracy::R14Unit, |q| q.r14_sq - 1.0),
    (Degeneracy::R35Unit, |q| q.x3.abs() - 0.5),
];

fn bisect_root(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = g(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn compute_windows(branch: Branch) -> Vec<SignTypeWindow> {
    const GRID: usize = 4000;
    let mut points: Vec<(f64, Degeneracy)> = Vec::new();
    for (deg, g) in BOUNDARY_FUNCTIONS {
        let eval = |y: f64| g(&symmetric_quantities(y, branch));
        let ys: Vec<f64> = (0..=GRID)
            .map(|i| Y4_MAX * (i as f64 + 0.5) / (GRID as f64 + 1.0))
            .collect();
        for w in ys.windows(2) {
            let (ga, gb) = (eval(w[0]), eval(w[1]));
            if ga == 0.0 || (ga > 0.0) != (gb > 0.0) {
                points.push((bisect_root(eval, w[0], w[1]), deg));
            }
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));

    // merge coincident boundary conditions
    let mut merged: Vec<(f64, Vec<Degeneracy>)> = vec![(0.0, vec![Degeneracy::Y4Zero])];
    for (y, d) in points {
        let last = merged.last_mut().unwrap();
        if (y - last.0).abs() < 1e-9 {
            last.1.push(d);
        } else {
            merged.push((y, vec![d]));
        }
    }
    let last = merged.last().unwrap().0;
    if (Y4_MAX - last).abs() < 1e-9 {
        merged.last_mut().unwrap().1.push(Degeneracy::BranchJunction);
    } else {
        merged.push((Y4_MAX, vec![Degeneracy::BranchJunction]));
    }
    for m in merged.iter_mut() {
        // collisions where a distance touches zero without a sign change
        let q = symmetric_quantities(m.0, branch);
        if q.r13_sq.abs() < 1e-9 {
            m.1.push(Degeneracy::Collision13);
        }
        if q.r35_sq.abs() < 1e-9 {
            m.1.push(Degeneracy::Collision35);
        }
        m.1.sort();
        m.1.dedup();
    }

    merged
        .windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0].0 + w[1].0);
            let shape = SymmetricShape { y4: mid, branch };
            SignTypeWindow {
                sign_type: classify_sign_type(&shape),
                branch,
                lo: w[0].0,
                hi: w[1].0,
                lo_boundary: w[0].1.clone(),
                hi_boundary: w[1].1.clone(),
            }
        })
        .collect()
}

/// Maximal sign-type windows of a branch, ordered by `y4`.
pub fn sign_type_windows(branch: Branch) -> &'static [SignTypeWindow] {
    static A: OnceLock<Vec<SignTypeWindow>> = OnceLock::new();
    static B: OnceLock<Vec<SignTypeWindow>> = OnceLock::new();
    match branch {
        Branch::A => A.get_or_init(|| compute_windows(Branch::A)),
        Branch::B => B.get_or_init(|| compute_windows(Branch::B)),
    }
}

impl SignType {
    /// The window of this sign type on its branch.
    pub fn window(&self) -> Option<&'static SignTypeWindow> {
        let branch = self.branch()?;
        sign_type_windows(branch).iter().find(|w| &w.sign_type == self)
    }
}
