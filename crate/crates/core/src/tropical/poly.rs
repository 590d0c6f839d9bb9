//! Sparse Laurent polynomials with exact coefficients that are themselves
//! polynomials in the masses `m1..m5`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact polynomial in `m1..m5`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MassPoly(BTreeMap<[u32; 5], Rational>);

impl MassPoly {
    pub fn zero() -> Self {
        MassPoly(BTreeMap::new())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MassPoly::zero();
        p.add_term([0; 5], c);
        p
    }

    /// `c · m_k` for a 1-based label `k`.
    pub fn mass(k: usize, c: Rational) -> Self {
        let mut e = [0; 5];
        e[k - 1] = 1;
        let mut p = MassPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 5], &Rational)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, e: [u32; 5], c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add_assign(&mut self, other: &MassPoly) {
        for (e, c) in &other.0 {
            self.add_term(*e, c.clone());
        }
    }

    pub fn scaled(&self, s: &Rational) -> MassPoly {
        let mut out = MassPoly::zero();
        for (e, c) in &self.0 {
            out.add_term(*e, c * s);
        }
        out
    }

    /// Relabels masses: `m_k` becomes `m_{perm[k-1]}`.
    pub fn relabeled(&self, perm: [usize; 5]) -> MassPoly {
        let mut out = MassPoly::zero();
        for (e, c) in &self.0 {
            let mut ne = [0; 5];
            for k in 0..5 {
                ne[perm[k] - 1] = e[k];
            }
            out.add_term(ne, c.clone());
        }
        out
    }
}

impl fmt::Display for MassPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.0.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("m{}", k + 1)),
                    _ => factors.push(format!("m{}^{p}", k + 1)),
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Which extreme weight selects the initial form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Min,
    Max,
}

/// Laurent polynomial in `nvars` variables with [`MassPoly`] coefficients.
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, MassPoly>,
    names: Option<&'static [&'static str]>,
}

impl LaurentPoly {
    pub fn new(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
            names: None,
        }
    }

    pub fn with_names(mut self, names: &'static [&'static str]) -> Self {
        assert_eq!(names.len(), self.nvars);
        self.names = Some(names);
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &MassPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> Option<&MassPoly> {
        self.terms.get(e)
    }

    pub fn add_term(&mut self, e: Vec<i32>, c: &MassPoly) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Multiplies by the monomial with exponent `shift`.
    pub fn shifted(&self, shift: &[i32]) -> LaurentPoly {
        let mut out = LaurentPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            names: self.names,
        };
        for (e, c) in &self.terms {
            let ne = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Multiplies by the smallest monomial making every exponent non-negative
    /// with some exponent zero in each variable that occurs.
    pub fn cleared(&self) -> LaurentPoly {
        let mut shift = vec![0; self.nvars];
        for (v, s) in shift.iter_mut().enumerate() {
            if let Some(m) = self.terms.keys().map(|e| e[v]).min() {
                *s = -m;
            }
        }
        self.shifted(&shift)
    }

    /// Renames variable `v` to `perm[v]` and relabels masses by `masses`.
    pub fn permuted(&self, perm: &[usize], masses: [usize; 5]) -> LaurentPoly {
        let mut out = LaurentPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            names: self.names,
        };
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (v, &p) in e.iter().enumerate() {
                ne[perm[v]] = p;
            }
            out.add_term(ne, &c.relabeled(masses));
        }
        out
    }

    pub fn weight_of(e: &[i32], w: &[Rational]) -> Rational {
        e.iter()
            .zip(w)
            .filter(|(p, _)| **p != 0)
            .map(|(p, wi)| wi * rat(*p as i64))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Sub-sum of the terms whose `w`-weight is extreme under `convention`.
    pub fn initial_form(&self, w: &[Rational], convention: Convention) -> LaurentPoly {
        assert_eq!(w.len(), self.nvars);
        let weighted: Vec<(Rational, &Vec<i32>)> =
            self.terms.keys().map(|e| (Self::weight_of(e, w), e)).collect();
        let best = match convention {
            Convention::Min => weighted.iter().map(|(x, _)| x).min(),
            Convention::Max => weighted.iter().map(|(x, _)| x).max(),
        };
        let mut out = LaurentPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
            names: self.names,
        };
        if let Some(best) = best.cloned() {
            for (x, e) in weighted {
                if x == best {
                    out.terms.insert(e.clone(), self.terms[e].clone());
                }
            }
        }
        out
    }

    fn name(&self, v: usize) -> String {
        match self.names {
            Some(n) => n[v].to_string(),
            None => format!("x{}", v + 1),
        }
    }

    pub fn monomial_string(&self, e: &[i32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0)
            .map(|(v, &p)| {
                if p == 1 {
                    self.name(v)
                } else {
                    format!("{}^{p}", self.name(v))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", self.monomial_string(e))?;
        }
        Ok(())
    }
}
