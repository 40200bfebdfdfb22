//! Dense integer power series in one variable `q`, truncated at a fixed
//! degree. Used for Hilbert series bookkeeping.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

impl TruncatedSeries {
    /// Zero series keeping coefficients of `q^0..=q^max_degree`.
    pub fn zero(max_degree: u32) -> Self {
        TruncatedSeries { coeffs: vec![0; max_degree as usize + 1] }
    }

    pub fn one(max_degree: u32) -> Self {
        let mut s = Self::zero(max_degree);
        s.coeffs[0] = 1;
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<i128>, max_degree: u32) -> Self {
        coeffs.resize(max_degree as usize + 1, 0);
        TruncatedSeries { coeffs }
    }

    /// `sum_d q^d` over the given degrees, counted with multiplicity.
    pub fn from_degrees<I: IntoIterator<Item = u32>>(degrees: I, max_degree: u32) -> Self {
        let mut s = Self::zero(max_degree);
        for d in degrees {
            if d <= max_degree {
                s.coeffs[d as usize] += 1;
            }
        }
        s
    }

    /// `1 / (1 - q^d)` for `d >= 1`.
    pub fn geometric(d: u32, max_degree: u32) -> Self {
        assert!(d >= 1, "geometric series needs a positive step");
        let mut s = Self::zero(max_degree);
        for k in (0..=max_degree).step_by(d as usize) {
            s.coeffs[k as usize] = 1;
        }
        s
    }

    /// Hilbert series of a free graded polynomial ring on generators of the given degrees.
    pub fn polynomial_ring<I: IntoIterator<Item = u32>>(generator_degrees: I, max_degree: u32) -> Self {
        generator_degrees.into_iter().fold(Self::one(max_degree), |acc, d| acc.mul(&Self::geometric(d, max_degree)))
    }

    pub fn max_degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, d: u32) -> i128 {
        self.coeffs.get(d as usize).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![0i128; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn sum(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// First degree where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<u32> {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n as u32).find(|&d| self.coeff(d) != other.coeff(d))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, _) => write!(f, "{a}*q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}*q^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.coeffs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_times_factor() {
        // 1/(1-q^4) * (1+q^2) == 1/(1-q^2)
        let lhs = TruncatedSeries::geometric(4, 20).mul(&TruncatedSeries::from_degrees([0, 2], 20));
        assert_eq!(lhs, TruncatedSeries::geometric(2, 20));
    }

    #[test]
    fn polynomial_ring_counts() {
        // two generators of degree 2: coefficient of q^{2k} is k+1
        let s = TruncatedSeries::polynomial_ring([2, 2], 10);
        assert_eq!(s.coeffs(), &[1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6]);
        assert_eq!(s.to_string(), "1 + 2*q^2 + 3*q^4 + 4*q^6 + 5*q^8 + 6*q^10 + O(q^11)");
    }
}
