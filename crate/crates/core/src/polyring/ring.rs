use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Monomial, PolyError};

/// Shared handle to a ring description.
pub type Ring = Arc<RingSpec>;

/// A named generator of a graded polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Variable {
    pub name: String,
    /// Cohomological degree, always at least 1.
    pub degree: u32,
}

/// Coefficient domain a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientDomain {
    Integers,
    Rationals,
}

/// Ordered list of graded variables. Variable order fixes the monomial
/// order: the first variable is the largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    vars: Vec<Variable>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl RingSpec {
    pub fn new<I, S>(vars: I) -> Result<Ring, PolyError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut out: Vec<Variable> = Vec::new();
        for (name, degree) in vars {
            let name = name.into();
            if !valid_name(&name) {
                return Err(PolyError::InvalidRing(format!("invalid variable name {name:?}")));
            }
            if degree == 0 {
                return Err(PolyError::InvalidRing(format!("variable {name} must have positive degree")));
            }
            if out.iter().any(|v| v.name == name) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {name}")));
            }
            out.push(Variable { name, degree });
        }
        Ok(Arc::new(RingSpec { vars: out }))
    }

    /// `n` variables `prefix1..prefixn`, all of the same degree.
    pub fn indexed(prefix: &str, n: usize, degree: u32) -> Result<Ring, PolyError> {
        Self::new((1..=n).map(|i| (format!("{prefix}{i}"), degree)))
    }

    /// Parses `name:degree` pairs separated by commas, e.g. `e1:2,e2:2,e:4`.
    pub fn parse(text: &str) -> Result<Ring, PolyError> {
        let mut vars = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, degree) =
                item.split_once(':').ok_or_else(|| PolyError::InvalidRing(format!("expected name:degree, got {item:?}")))?;
            let degree = degree.trim().parse::<u32>().map_err(|_| PolyError::InvalidRing(format!("bad degree in {item:?}")))?;
            vars.push((name.trim().to_string(), degree));
        }
        Self::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.vars[i].degree
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.vars.iter().map(|v| v.degree)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// All monomials of cohomological degree exactly `d`, in descending
    /// storage order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(degs: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == degs.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = degs[i];
            for e in 0..=left / w {
                cur[i] = e;
                rec(degs, i + 1, left - e * w, cur, out);
            }
            cur[i] = 0;
        }
        let degs: Vec<u32> = self.degrees().collect();
        let mut raw = Vec::new();
        rec(&degs, 0, d, &mut vec![0; degs.len()], &mut raw);
        let mut out: Vec<Monomial> = raw.into_iter().map(|e| Monomial::new(e, self).expect("degree bounded by d")).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Ring with the variables of `self` followed by those of `other`.
    pub fn extend(&self, other: &RingSpec) -> Result<Ring, PolyError> {
        Self::new(self.vars.iter().chain(other.vars.iter()).map(|v| (v.name.clone(), v.degree)))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", v.name, v.degree)?;
        }
        Ok(())
    }
}

/// Two ring handles describe the same ring.
pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a.vars == b.vars
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names_and_degrees() {
        assert!(RingSpec::new([("1x", 2)]).is_err());
        assert!(RingSpec::new([("x", 0)]).is_err());
        assert!(RingSpec::new([("x", 2), ("x", 4)]).is_err());
        assert!(RingSpec::new([("e'", 2), ("e1_b", 4)]).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let r = RingSpec::parse("e1:2, e2:2,e:4").unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.degree(2), 4);
        assert_eq!(r.to_string(), "e1:2,e2:2,e:4");
        assert!(RingSpec::parse("e1").is_err());
    }

    #[test]
    fn monomials_by_degree() {
        let r = RingSpec::parse("x:1,y:2").unwrap();
        let ms = r.monomials_of_degree(4);
        let exps: Vec<Vec<u32>> = ms.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(exps, vec![vec![4, 0], vec![2, 1], vec![0, 2]]);
        assert_eq!(RingSpec::parse("x:2").unwrap().monomials_of_degree(3).len(), 0);
        assert_eq!(RingSpec::new(Vec::<(String, u32)>::new()).unwrap().monomials_of_degree(0).len(), 1);
    }
}
