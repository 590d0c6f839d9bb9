//! Ray and cone representatives, stored symbolically in `A`, and their
//! verification against the prevariety.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::{Convention, Rational};
use super::system::{
    build_system, class_permutation, in_prevariety, negative_sum, parse_rational, MassSpec,
    Membership, PolySystem, RationalExponent, WeightVector, Witness, PREVARIETY_CONVENTION,
    REFLECTION, ROTATION,
};
use crate::{Error, Result};

const BUILTIN: &str = include_str!("../../data/ray_table.json");

/// `a·A + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineA {
    pub a: Rational,
    pub c: Rational,
}

impl AffineA {
    pub fn at(&self, exponent: RationalExponent) -> Rational {
        &self.a * exponent.value() + &self.c
    }
}

impl std::str::FromStr for AffineA {
    type Err = Error;
    /// Accepts `c`, `A`, `kA`, `A+c`, `A-c`, `kA+c`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = s.find('A') else {
            return Ok(AffineA {
                a: Rational::zero(),
                c: parse_rational(&s)?,
            });
        };
        let a = match &s[..pos] {
            "" | "+" => Rational::from_integer(1.into()),
            "-" => Rational::from_integer((-1).into()),
            k => parse_rational(k.trim_end_matches('*'))?,
        };
        let c = match &s[pos + 1..] {
            "" => Rational::zero(),
            rest => parse_rational(rest)?,
        };
        Ok(AffineA { a, c })
    }
}

#[derive(Deserialize)]
struct RawTable {
    version: u32,
    coordinates: Vec<String>,
    rays: Vec<RawRay>,
    cones: Vec<RawCone>,
}

#[derive(Deserialize)]
struct RawRay {
    label: String,
    vector: Vec<String>,
    multiplicity: usize,
}

#[derive(Deserialize)]
struct RawCone {
    label: String,
    rays: Vec<Vec<String>>,
}

pub type SymbolicVector = [AffineA; 6];

#[derive(Clone, Debug)]
pub struct RayClass {
    pub label: String,
    pub vector: SymbolicVector,
    pub source: Vec<String>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Cone {
    pub label: String,
    pub generators: Vec<SymbolicVector>,
    pub source: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct RayTable {
    pub version: u32,
    pub rays: Vec<RayClass>,
    pub cones: Vec<Cone>,
}

fn symbolic(v: &[String]) -> Result<SymbolicVector> {
    if v.len() != 6 {
        return Err(Error::Parse(format!("ray needs 6 entries, got {}", v.len())));
    }
    let parsed: Vec<AffineA> = v.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

pub fn specialize(v: &SymbolicVector, a: RationalExponent) -> WeightVector {
    WeightVector(std::array::from_fn(|c| v[c].at(a)))
}

impl RayTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawTable =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("ray table: {e}")))?;
        let expected = ["r12", "r13", "r14", "r24", "r25", "r35"];
        if raw.coordinates != expected {
            return Err(Error::Parse(format!(
                "ray table coordinates must be {expected:?}, got {:?}",
                raw.coordinates
            )));
        }
        let rays = raw
            .rays
            .into_iter()
            .map(|r| {
                Ok(RayClass {
                    vector: symbolic(&r.vector)?,
                    label: r.label,
                    source: r.vector,
                    multiplicity: r.multiplicity,
                })
            })
            .collect::<Result<_>>()?;
        let cones = raw
            .cones
            .into_iter()
            .map(|c| {
                Ok(Cone {
                    generators: c.rays.iter().map(|v| symbolic(v)).collect::<Result<_>>()?,
                    label: c.label,
                    source: c.rays,
                })
            })
            .collect::<Result<_>>()?;
        Ok(RayTable {
            version: raw.version,
            rays,
            cones,
        })
    }

    /// The shipped table of nine ray classes and 22 cones.
    pub fn builtin() -> &'static RayTable {
        static TABLE: OnceLock<RayTable> = OnceLock::new();
        TABLE.get_or_init(|| RayTable::from_json(BUILTIN).expect("shipped ray table parses"))
    }
}

/// Distinct images of `w` under the group generated by `generators`.
pub fn orbit(w: &WeightVector, generators: &[[usize; 5]]) -> Vec<WeightVector> {
    let perms: Vec<[usize; 6]> = generators.iter().map(|g| class_permutation(*g)).collect();
    let mut seen = BTreeSet::new();
    let mut order = vec![w.clone()];
    seen.insert(w.clone());
    let mut i = 0;
    while i < order.len() {
        for p in &perms {
            let next = order[i].permuted(*p);
            if seen.insert(next.clone()) {
                order.push(next);
            }
        }
        i += 1;
    }
    order
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub vector: Vec<String>,
    pub member: bool,
    pub witness: Option<Witness>,
}

impl MemberReport {
    fn new(w: &WeightVector, m: Membership) -> Self {
        MemberReport {
            vector: w.to_strings(),
            member: m.member,
            witness: m.witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RayReport {
    pub label: String,
    pub symbolic: Vec<String>,
    pub vector: Vec<String>,
    pub multiplicity: usize,
    pub c5_orbit: usize,
    pub d5_orbit: usize,
    pub multiplicity_matches_c5: bool,
    pub members: Vec<MemberReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub label: String,
    pub generators: Vec<Vec<String>>,
    pub interior_point: Vec<String>,
    pub member: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfSpaceReport {
    /// Ray classes whose specialized vector has negative coordinate sum.
    pub negative_sum_rays: Vec<String>,
    /// `h1` is the only such class.
    pub h1_unique: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub exponent: RationalExponent,
    pub convention: Convention,
    /// `A = 2`: every `Q` weight vanishes.
    pub degenerate: bool,
    pub table_version: u32,
    pub rays: Vec<RayReport>,
    pub cones: Vec<ConeReport>,
    pub half_space: HalfSpaceReport,
    /// All orbit members and all cone interior points are in the prevariety.
    pub passed: bool,
}

/// Checks every rotation image of every ray class and the generator sum of
/// every cone. The half-space observation is reported, not required.
pub fn verify_tables(a: RationalExponent) -> TableReport {
    verify_table(RayTable::builtin(), a)
}

pub fn verify_table(table: &RayTable, a: RationalExponent) -> TableReport {
    let system = build_system(a, &MassSpec::Generic);
    let rays: Vec<RayReport> = table.rays.iter().map(|r| ray_report(r, a, &system)).collect();
    let cones: Vec<ConeReport> = table
        .cones
        .iter()
        .map(|c| {
            let gens: Vec<WeightVector> = c.generators.iter().map(|g| specialize(g, a)).collect();
            let interior = gens
                .iter()
                .skip(1)
                .fold(gens[0].clone(), |acc, g| acc.add(g));
            let m = in_prevariety(&interior, &system);
            ConeReport {
                label: c.label.clone(),
                generators: c.source.clone(),
                interior_point: interior.to_strings(),
                member: m.member,
                witness: m.witness,
            }
        })
        .collect();
    let negative_sum_rays: Vec<String> = table
        .rays
        .iter()
        .filter(|r| negative_sum(&specialize(&r.vector, a)))
        .map(|r| r.label.clone())
        .collect();
    let h1_unique = negative_sum_rays == ["h1"];
    let passed = rays.iter().all(|r| r.passed) && cones.iter().all(|c| c.member);
    TableReport {
        exponent: a,
        convention: PREVARIETY_CONVENTION,
        degenerate: a.is_degenerate(),
        table_version: table.version,
        rays,
        cones,
        half_space: HalfSpaceReport {
            negative_sum_rays,
            h1_unique,
        },
        passed,
    }
}

fn ray_report(r: &RayClass, a: RationalExponent, system: &PolySystem) -> RayReport {
    let w = specialize(&r.vector, a);
    let c5 = orbit(&w, &[ROTATION]);
    let d5 = orbit(&w, &[ROTATION, REFLECTION]);
    let members: Vec<MemberReport> = c5
        .iter()
        .map(|v| MemberReport::new(v, in_prevariety(v, system)))
        .collect();
    RayReport {
        label: r.label.clone(),
        symbolic: r.source.clone(),
        vector: w.to_strings(),
        multiplicity: r.multiplicity,
        c5_orbit: c5.len(),
        d5_orbit: d5.len(),
        multiplicity_matches_c5: c5.len() == r.multiplicity,
        passed: members.iter().all(|m| m.member),
        members,
    }
}

/// Single weight-vector check against the generic-mass system.
pub fn check_weight(w: &WeightVector, a: RationalExponent) -> Membership {
    in_prevariety(w, &build_system(a, &MassSpec::Generic))
}
