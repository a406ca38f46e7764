use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{RatMatrix, Rational};

/// Largest matrix dimension accepted by [`char_poly_roots`].
pub const MAX_CHAR_POLY_DIM: usize = 32;

/// Upper limit on the number of rational candidates tried by the root search.
const MAX_ROOT_CANDIDATES: u64 = 50_000_000;

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Divides by `(x - root)`, returning quotient and remainder.
    pub fn divide_linear(&self, root: &Rational) -> (Polynomial, Rational) {
        let n = self.degree();
        if n == 0 {
            return (Polynomial::new(vec![Rational::zero()]), self.coeffs[0].clone());
        }
        let mut quotient = vec![Rational::zero(); n];
        let mut carry = Rational::zero();
        for i in (0..=n).rev() {
            let v = &self.coeffs[i] + &(&carry * root);
            if i == 0 {
                return (Polynomial::new(quotient), v);
            }
            quotient[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    pub fn mul_linear(&self, root: &Rational) -> Polynomial {
        // (x - root) * p
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= &(c * root);
        }
        Polynomial::new(out)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let t = match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharPolyError {
    #[error("characteristic polynomial of a non-square {0}x{1} matrix")]
    NotSquare(usize, usize),
    #[error("matrix dimension {0} exceeds the supported maximum of {MAX_CHAR_POLY_DIM}")]
    TooLarge(usize),
    #[error("spectrum is not rational: characteristic polynomial {polynomial} has only the rational roots {rational_roots:?}")]
    IrrationalSpectrum {
        polynomial: String,
        rational_roots: Vec<(Rational, usize)>,
    },
    #[error("rational root search space too large")]
    SearchTooLarge,
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier recurrence.
pub fn char_poly(m: &RatMatrix) -> Result<Polynomial, CharPolyError> {
    if !m.is_square() {
        return Err(CharPolyError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        let am = m * &mk;
        let c_prev = coeffs[n - k + 1].clone();
        mk = RatMatrix::from_fn(n, n, |r, c| {
            if r == c {
                am.get(r, c) + &c_prev
            } else {
                am.get(r, c).clone()
            }
        });
        let tr = (m * &mk).trace();
        coeffs[n - k] = -(tr / Rational::from(k));
    }
    Ok(Polynomial::new(coeffs))
}

/// All eigenvalues of `m` with algebraic multiplicities, in increasing order,
/// provided the characteristic polynomial splits over the rationals.
pub fn char_poly_roots(m: &RatMatrix) -> Result<Vec<(Rational, usize)>, CharPolyError> {
    if !m.is_square() {
        return Err(CharPolyError::NotSquare(m.rows(), m.cols()));
    }
    if m.rows() > MAX_CHAR_POLY_DIM {
        return Err(CharPolyError::TooLarge(m.rows()));
    }
    let poly = char_poly(m)?;
    let bound = gershgorin_bound(m);
    let (roots, rest) = rational_roots(&poly, &bound)?;
    if rest.degree() > 0 {
        return Err(CharPolyError::IrrationalSpectrum {
            polynomial: poly.to_string(),
            rational_roots: roots,
        });
    }
    Ok(roots)
}

fn gershgorin_bound(m: &RatMatrix) -> Rational {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(Rational::abs).sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero)
}

fn lcm_of_denominators(p: &Polynomial) -> BigInt {
    p.coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Extracts every rational root of `poly` whose absolute value is at most
/// `bound`, returning the roots (ascending) and the unsplit cofactor.
fn rational_roots(
    poly: &Polynomial,
    bound: &Rational,
) -> Result<(Vec<(Rational, usize)>, Polynomial), CharPolyError> {
    let mut rest = poly.clone();
    let mut found: Vec<(Rational, usize)> = Vec::new();

    let mut zero_mult = 0;
    while rest.degree() > 0 && rest.coeffs[0].is_zero() {
        rest = rest.divide_linear(&Rational::zero()).0;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        found.push((Rational::zero(), zero_mult));
    }
    if rest.degree() == 0 {
        found.sort();
        return Ok((found, rest));
    }

    // Integer coefficients a_0..a_n; a root p/q in lowest terms has p | a_0, q | a_n.
    let scale = Rational::from_integer(lcm_of_denominators(&rest));
    let ints: Vec<BigInt> = rest
        .coeffs
        .iter()
        .map(|c| (c * &scale).numer().clone())
        .collect();
    let a0 = ints[0].clone();
    let an = ints[ints.len() - 1].clone();
    let qs = divisors(&an);

    let bound_int = bound.ceil();
    let total: u64 = qs
        .iter()
        .map(|q| {
            let n: BigInt = q * &bound_int * 2 + 1;
            n.to_u64().unwrap_or(u64::MAX)
        })
        .fold(0u64, u64::saturating_add);
    if total > MAX_ROOT_CANDIDATES {
        return Err(CharPolyError::SearchTooLarge);
    }

    for q in &qs {
        let limit = q * &bound_int;
        let mut p = -limit.clone();
        while p <= limit {
            if !p.is_zero() && (&a0 % &p).is_zero() && p.gcd(q).is_one() {
                let cand = Rational::new(p.clone(), q.clone());
                let mut mult = 0;
                loop {
                    if rest.degree() == 0 {
                        break;
                    }
                    let (quot, rem) = rest.divide_linear(&cand);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = quot;
                    mult += 1;
                }
                if mult > 0 {
                    found.push((cand, mult));
                }
            }
            p += 1;
        }
    }
    found.sort();
    Ok((found, rest))
}
