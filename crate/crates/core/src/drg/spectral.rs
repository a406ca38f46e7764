use serde::{Deserialize, Serialize};

use super::params::intersection_matrix;
use super::{intersection_numbers, DrgError, IntersectionArray};
use crate::exactmath::{char_poly_roots, RatMatrix, Rational};

/// Distinct eigenvalues in decreasing order with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<Rational>,
    pub multiplicities: Vec<u64>,
}

impl Spectrum {
    pub fn pairs(&self) -> impl Iterator<Item = (&Rational, u64)> {
        self.eigenvalues.iter().zip(self.multiplicities.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenmatrixPair {
    /// `P[r][j]`: eigenvalue of the distance-`j` matrix on the `r`-th eigenspace.
    pub p: RatMatrix,
    /// `Q = v P^{-1}`.
    pub q: RatMatrix,
}

/// Krein parameters `q[h][i][j] = q^h_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinTable {
    pub q: Vec<Vec<Vec<Rational>>>,
}

impl KreinTable {
    pub fn get(&self, h: usize, i: usize, j: usize) -> &Rational {
        &self.q[h][i][j]
    }

    /// All `(i, j, h)` with `q^h_ij = 0`.
    pub fn vanishing(&self) -> Vec<(usize, usize, usize)> {
        let n = self.q.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for h in 0..n {
                    if self.q[h][i][j].is_zero() {
                        out.push((i, j, h));
                    }
                }
            }
        }
        out
    }

    /// Vanishing entries with all three indices non-zero.
    pub fn nontrivial_vanishing(&self) -> Vec<(usize, usize, usize)> {
        self.vanishing()
            .into_iter()
            .filter(|&(i, j, h)| i > 0 && j > 0 && h > 0)
            .collect()
    }
}

/// Standard sequence `u_0 = 1, u_1 = theta/k`,
/// `c_i u_{i-1} + a_i u_i + b_i u_{i+1} = theta u_i`.
pub fn standard_sequence(arr: &IntersectionArray, theta: &Rational) -> Vec<Rational> {
    let d = arr.diameter();
    let k = Rational::from(arr.valency());
    let mut u = vec![Rational::one(), theta / &k];
    for i in 1..d {
        let rhs = theta * &u[i]
            - Rational::from(arr.c_at(i)) * &u[i - 1]
            - Rational::from(arr.a_at(i)) * &u[i];
        u.push(rhs / Rational::from(arr.b_at(i)));
    }
    u
}

pub fn spectrum(arr: &IntersectionArray) -> Result<Spectrum, DrgError> {
    let pt = intersection_numbers(arr)?;
    let mut roots = char_poly_roots(&intersection_matrix(arr))?;
    roots.sort_by(|a, b| b.0.cmp(&a.0));
    let v = Rational::from(pt.v);
    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    for (theta, _) in roots {
        let u = standard_sequence(arr, &theta);
        let norm: Rational = u
            .iter()
            .zip(&pt.k)
            .map(|(ui, &ki)| Rational::from(ki) * ui * ui)
            .sum();
        let m = &v / &norm;
        let count = m
            .to_u64()
            .filter(|&x| x > 0)
            .ok_or_else(|| DrgError::NonIntegralMultiplicity {
                eigenvalue: theta.clone(),
                multiplicity: m.clone(),
            })?;
        eigenvalues.push(theta);
        multiplicities.push(count);
    }
    Ok(Spectrum {
        eigenvalues,
        multiplicities,
    })
}

pub fn eigenmatrices(arr: &IntersectionArray) -> Result<EigenmatrixPair, DrgError> {
    let pt = intersection_numbers(arr)?;
    let spec = spectrum(arr)?;
    let d = arr.diameter();
    let p = RatMatrix::from_fn(d + 1, d + 1, |r, j| {
        let u = standard_sequence(arr, &spec.eigenvalues[r]);
        Rational::from(pt.k[j]) * &u[j]
    });
    let q = p
        .inverse()
        .expect("eigenmatrix of distinct eigenvalues is invertible")
        .scale(&Rational::from(pt.v));
    Ok(EigenmatrixPair { p, q })
}

/// `q^h_ij = (m_i m_j / v) sum_l P_il P_jl P_hl / k_l^2`.
pub fn krein_table(arr: &IntersectionArray) -> Result<KreinTable, DrgError> {
    let pt = intersection_numbers(arr)?;
    let spec = spectrum(arr)?;
    let EigenmatrixPair { p, .. } = eigenmatrices(arr)?;
    let n = arr.diameter() + 1;
    let v = Rational::from(pt.v);
    let k2: Vec<Rational> = pt.k.iter().map(|&k| Rational::from(k * k)).collect();
    let mut q = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (h, qh) in q.iter_mut().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let s: Rational = (0..n)
                    .map(|l| p.get(i, l) * p.get(j, l) * p.get(h, l) / &k2[l])
                    .sum();
                let mm = Rational::from(spec.multiplicities[i]) * Rational::from(spec.multiplicities[j]);
                let val = mm / &v * s;
                if val.is_negative() {
                    return Err(DrgError::NegativeKrein { i, j, h, value: val });
                }
                qh[i][j] = val;
            }
        }
    }
    Ok(KreinTable { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::CharPolyError;

    fn arr(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    #[test]
    fn target_spectrum() {
        let s = spectrum(&arr("{55,54,2;1,1,54}")).unwrap();
        let ev: Vec<Rational> = [55, 7, -1, -8].iter().map(|&x| Rational::from(x)).collect();
        assert_eq!(s.eigenvalues, ev);
        assert_eq!(s.multiplicities, vec![1, 1617, 110, 1408]);
    }

    #[test]
    fn petersen_spectrum() {
        let s = spectrum(&arr("{3,2;1,1}")).unwrap();
        assert_eq!(s.multiplicities, vec![1, 5, 4]);
        assert_eq!(s.eigenvalues, vec![Rational::from(3), Rational::from(1), Rational::from(-2)]);
    }

    #[test]
    fn pentagon_irrational() {
        assert!(matches!(
            spectrum(&arr("{2,1;1,1}")),
            Err(DrgError::Spectrum(CharPolyError::IrrationalSpectrum { .. }))
        ));
    }

    #[test]
    fn target_q_matrix() {
        let e = eigenmatrices(&arr("{55,54,2;1,1,54}")).unwrap();
        let r = |n: i64, d: i64| Rational::new(n, d);
        let expected = RatMatrix::from_rows(vec![
            vec![r(1, 1), r(1617, 1), r(110, 1), r(1408, 1)],
            vec![r(1, 1), r(1029, 5), r(-2, 1), r(-1024, 5)],
            vec![r(1, 1), r(-49, 15), r(-2, 1), r(64, 15)],
            vec![r(1, 1), r(-147, 5), r(54, 1), r(-128, 5)],
        ]);
        assert_eq!(e.q, expected);
        assert_eq!(&e.p * &e.q, RatMatrix::identity(4).scale(&Rational::from(3136)));
    }

    #[test]
    fn krein_basic_identities() {
        for s in ["{55,54,2;1,1,54}", "{3,2;1,1}", "{3,2,1;1,2,3}", "{4,3,3;1,1,2}", "{7,6;1,1}"] {
            let a = arr(s);
            let spec = spectrum(&a).unwrap();
            let kt = krein_table(&a).unwrap();
            let n = a.diameter() + 1;
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j { Rational::from(spec.multiplicities[i]) } else { Rational::zero() };
                    assert_eq!(kt.get(0, i, j), &expect, "{s}");
                    for h in 0..n {
                        assert_eq!(kt.get(h, i, j), kt.get(h, j, i));
                    }
                }
                for h in 0..n {
                    let row: Rational = (0..n).map(|j| kt.get(h, i, j)).sum();
                    assert_eq!(row, Rational::from(spec.multiplicities[i]));
                }
            }
        }
    }

    #[test]
    fn cube_has_vanishing_krein() {
        let kt = krein_table(&arr("{3,2,1;1,2,3}")).unwrap();
        assert!(kt.get(1, 1, 1).is_zero());
    }
}
