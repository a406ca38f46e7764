use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{TripleError, TripleFamily};
use crate::exactmath::Rational;

/// Maximum number of integer points materialized before giving up.
pub const DEFAULT_POINT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_points: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_points: DEFAULT_POINT_CAP,
        }
    }
}

/// `lo <= c0 + c.t <= hi` and `modulus | c0 + c.t`.
#[derive(Debug, Clone)]
struct Form {
    c0: i128,
    c: Vec<i128>,
    lo: Option<i128>,
    hi: Option<i128>,
    modulus: i128,
}

impl Form {
    fn value(&self, t: &[i128]) -> i128 {
        self.c0 + self.c.iter().zip(t).map(|(a, b)| a * b).sum::<i128>()
    }

    fn holds(&self, t: &[i128]) -> bool {
        let v = self.value(t);
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi) && v % self.modulus == 0
    }
}

fn to_i128(x: &BigInt) -> i128 {
    x.to_i128().expect("coefficient exceeds i128")
}

fn lcm_denoms<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales the affine function `k + sum a_i t_i` to integers.
fn integer_form(constant: &Rational, coeffs: &[Rational]) -> (i128, Vec<i128>, BigInt) {
    let den = lcm_denoms(std::iter::once(constant).chain(coeffs));
    let scale = Rational::from_integer(den.clone());
    let c0 = to_i128((constant * &scale).numer());
    let c = coeffs.iter().map(|a| to_i128((a * &scale).numer())).collect();
    (c0, c, den)
}

fn build_forms(fam: &TripleFamily) -> Vec<Form> {
    let sol = &fam.solution;
    let mut forms = Vec::new();
    for cell in 0..fam.num_cells() {
        let (k, a) = sol.expression(cell);
        let (c0, c, den) = integer_form(&k, &a);
        let den = to_i128(&den);
        forms.push(Form {
            c0,
            c,
            lo: Some(0),
            hi: Some(fam.upper[cell] as i128 * den),
            modulus: den,
        });
    }
    for ineq in &fam.inequalities {
        // sum_c w_c x_c <= rhs, with x = particular + sum_k t_k basis_k
        let constant: Rational = ineq
            .coeffs
            .iter()
            .zip(&sol.particular)
            .map(|(w, x)| w * x)
            .sum::<Rational>()
            - &ineq.rhs;
        let coeffs: Vec<Rational> = sol
            .basis
            .iter()
            .map(|b| ineq.coeffs.iter().zip(b).map(|(w, x)| w * x).sum())
            .collect();
        let (c0, c, _) = integer_form(&constant, &coeffs);
        forms.push(Form {
            c0,
            c,
            lo: None,
            hi: Some(0),
            modulus: 1,
        });
    }
    forms
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b) - if b < 0 && a.rem_euclid(b) != 0 { 1 } else { 0 }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Tightens the box until no form changes it. Returns false if a domain empties.
fn propagate(forms: &[Form], lo: &mut [i128], hi: &mut [i128]) -> bool {
    loop {
        let mut changed = false;
        for f in forms {
            let mut min_sum = f.c0;
            let mut max_sum = f.c0;
            for (k, &a) in f.c.iter().enumerate() {
                if a > 0 {
                    min_sum += a * lo[k];
                    max_sum += a * hi[k];
                } else if a < 0 {
                    min_sum += a * hi[k];
                    max_sum += a * lo[k];
                }
            }
            if f.lo.is_some_and(|l| max_sum < l) || f.hi.is_some_and(|h| min_sum > h) {
                return false;
            }
            for (k, &a) in f.c.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let (kmin, kmax) = if a > 0 { (a * lo[k], a * hi[k]) } else { (a * hi[k], a * lo[k]) };
                let rest_min = min_sum - kmin;
                let rest_max = max_sum - kmax;
                // a t_k in [f.lo - rest_max, f.hi - rest_min]
                let (mut new_lo, mut new_hi) = (lo[k], hi[k]);
                if let Some(l) = f.lo {
                    let bound = l - rest_max;
                    if a > 0 {
                        new_lo = new_lo.max(ceil_div(bound, a));
                    } else {
                        new_hi = new_hi.min(floor_div(bound, a));
                    }
                }
                if let Some(h) = f.hi {
                    let bound = h - rest_min;
                    if a > 0 {
                        new_hi = new_hi.min(floor_div(bound, a));
                    } else {
                        new_lo = new_lo.max(ceil_div(bound, a));
                    }
                }
                if new_lo > new_hi {
                    return false;
                }
                if new_lo != lo[k] || new_hi != hi[k] {
                    lo[k] = new_lo;
                    hi[k] = new_hi;
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn initial_box(fam: &TripleFamily) -> (Vec<i128>, Vec<i128>) {
    let lo = vec![0; fam.dimension()];
    let hi = fam.solution.free.iter().map(|&c| fam.upper[c] as i128).collect();
    (lo, hi)
}

/// Parameter box after bound propagation, or `None` if provably empty.
/// Each parameter is the value of the free cell it is named after.
pub fn parameter_box(fam: &TripleFamily) -> Option<Vec<(i128, i128)>> {
    let forms = build_forms(fam);
    let (mut lo, mut hi) = initial_box(fam);
    propagate(&forms, &mut lo, &mut hi).then(|| lo.into_iter().zip(hi).collect())
}

struct Search<'a> {
    forms: &'a [Form],
    out: Vec<Vec<i128>>,
    cap: usize,
}

impl Search<'_> {
    fn run(&mut self, mut lo: Vec<i128>, mut hi: Vec<i128>) -> Result<(), TripleError> {
        if !propagate(self.forms, &mut lo, &mut hi) {
            return Ok(());
        }
        let branch = (0..lo.len())
            .filter(|&k| lo[k] < hi[k])
            .min_by_key(|&k| (hi[k] - lo[k], k));
        let Some(k) = branch else {
            if self.forms.iter().all(|f| f.holds(&lo)) {
                if self.out.len() >= self.cap {
                    return Err(TripleError::EnumerationTooLarge { cap: self.cap });
                }
                self.out.push(lo);
            }
            return Ok(());
        };
        for val in lo[k]..=hi[k] {
            let mut l = lo.clone();
            let mut h = hi.clone();
            l[k] = val;
            h[k] = val;
            self.run(l, h)?;
        }
        Ok(())
    }
}

/// All integer points of the family as full cell vectors, sorted.
///
/// Points are filtered so the result is closed under `fam.closure`.
pub fn enumerate_points(fam: &TripleFamily, limits: EnumerationLimits) -> Result<Vec<Vec<i64>>, TripleError> {
    let forms = build_forms(fam);
    let (lo, hi) = initial_box(fam);
    let mut search = Search {
        forms: &forms,
        out: Vec::new(),
        cap: limits.max_points,
    };
    search.run(lo, hi)?;
    let mut points: BTreeSet<Vec<i64>> = search
        .out
        .iter()
        .map(|t| {
            let params: Vec<Rational> = t.iter().map(|&x| Rational::from(x as i64)).collect();
            fam.solution
                .evaluate(&params)
                .iter()
                .map(|x| x.to_i64().expect("integral point"))
                .collect()
        })
        .collect();
    if !fam.closure.is_empty() {
        loop {
            let keep: BTreeSet<Vec<i64>> = points
                .iter()
                .filter(|p| {
                    fam.closure
                        .iter()
                        .all(|s| points.contains(&s.apply_point(fam.d, p)))
                })
                .cloned()
                .collect();
            if keep.len() == points.len() {
                break;
            }
            points = keep;
        }
    }
    Ok(points.into_iter().collect())
}
