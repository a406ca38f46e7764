use drgtriples::drg::{eigenmatrices, intersection_numbers, krein_table, spectrum, standard_sequence, IntersectionArray};
use drgtriples::exactmath::{RatMatrix, Rational};

const ARRAYS: &[&str] = &[
    "{2,1;1,1}",
    "{3,2;1,1}",
    "{3,2,1;1,2,3}",
    "{4,3,3;1,1,2}",
    "{7,6;1,1}",
    "{5,4,2;1,1,4}",
    "{14,7;1,2}",
    "{55,54,2;1,1,54}",
];

fn r(n: i64) -> Rational {
    Rational::from(n)
}

/// `Q[l][i] = m_i u_l(theta_i)` straight from the standard sequences.
fn q_from_sequences(arr: &IntersectionArray) -> Vec<Vec<Rational>> {
    let spec = spectrum(arr).unwrap();
    let d = arr.diameter();
    let cols: Vec<Vec<Rational>> = spec
        .pairs()
        .map(|(theta, m)| standard_sequence(arr, theta).into_iter().map(|u| &u * &r(m as i64)).collect())
        .collect();
    (0..=d).map(|l| (0..=d).map(|i| cols[i][l].clone()).collect()).collect()
}

#[test]
fn krein_matches_dual_formula() {
    for text in ARRAYS {
        let arr: IntersectionArray = text.parse().unwrap();
        if spectrum(&arr).is_err() {
            continue;
        }
        let pt = intersection_numbers(&arr).unwrap();
        let q = q_from_sequences(&arr);
        let m: Vec<Rational> = (0..=pt.diameter()).map(|i| q[0][i].clone()).collect();
        let v = r(pt.v as i64);
        let kt = krein_table(&arr).unwrap();
        let d = pt.diameter();
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    let mut acc = Rational::zero();
                    for l in 0..=d {
                        let t = &(&(&r(pt.k[l] as i64) * &q[l][i]) * &q[l][j]) * &q[l][h];
                        acc = &acc + &t;
                    }
                    let expect = &acc / &(&v * &m[h]);
                    assert_eq!(kt.get(h, i, j), &expect, "{text} q^{h}_{i}{j}");
                    assert!(!expect.is_negative(), "{text} Krein condition");
                }
            }
        }
    }
}

#[test]
fn eigenmatrices_are_inverse() {
    for text in ARRAYS {
        let arr: IntersectionArray = text.parse().unwrap();
        let Ok(e) = eigenmatrices(&arr) else { continue };
        let pt = intersection_numbers(&arr).unwrap();
        let n = pt.diameter() + 1;
        let prod = RatMatrix::from_fn(n, n, |a, b| (0..n).map(|c| e.p.get(a, c) * e.q.get(c, b)).sum());
        let vi = RatMatrix::from_fn(n, n, |a, b| if a == b { r(pt.v as i64) } else { Rational::zero() });
        assert_eq!(prod, vi, "{text}");
        let q = q_from_sequences(&arr);
        for l in 0..n {
            for i in 0..n {
                assert_eq!(e.q.get(l, i), &q[l][i], "{text}");
            }
        }
        // first column of P is all ones, first row is the valencies
        for j in 0..n {
            assert_eq!(e.p.get(0, j), &r(pt.k[j] as i64));
            assert_eq!(e.p.get(j, 0), &Rational::one());
        }
    }
}

#[test]
fn target_spectrum_and_krein() {
    let arr: IntersectionArray = "{55,54,2;1,1,54}".parse().unwrap();
    let spec = spectrum(&arr).unwrap();
    let pairs: Vec<(i64, u64)> = spec.pairs().map(|(t, m)| (t.to_i64().unwrap(), m)).collect();
    assert_eq!(pairs, vec![(55, 1), (7, 1617), (-1, 110), (-8, 1408)]);
    assert!(krein_table(&arr).unwrap().nontrivial_vanishing().is_empty());
    let pt = intersection_numbers(&arr).unwrap();
    assert_eq!((pt.v, pt.k.clone()), (3136, vec![1, 55, 2970, 110]));
    let p2 = |i, j| pt.p(2, i, j);
    assert_eq!((p2(1, 2), p2(1, 3), p2(2, 1), p2(2, 2), p2(2, 3)), (52, 2, 52, 2811, 106));
}

#[test]
fn multiplicities_sum_to_order() {
    for text in ARRAYS {
        let arr: IntersectionArray = text.parse().unwrap();
        let Ok(spec) = spectrum(&arr) else { continue };
        let pt = intersection_numbers(&arr).unwrap();
        assert_eq!(spec.multiplicities.iter().sum::<u64>(), pt.v, "{text}");
        let trace: Rational = spec.pairs().fold(Rational::zero(), |a, (t, m)| &a + &(t * &r(m as i64)));
        assert!(trace.is_zero(), "{text}");
    }
}
