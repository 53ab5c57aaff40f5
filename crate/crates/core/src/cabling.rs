//! Norms and top gradings of cables.
//!
//! Each component `L_i` is replaced by its `(p_i, q_i)` cable, where `q_i`
//! is measured against the framing `Q_i = -sum_{j != i} p_j lk(L_i, L_j)`.
//! The formulas below hold for `q` large enough; no effective bound is
//! known, so they are evaluated unconditionally.

use alloc::vec::Vec;

use crate::half::Half;
use crate::laurent::Exponent;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CableError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("linking matrix is not square and symmetric")]
    BadLinking,
    #[error("p_{index} = {value} must be at least 1")]
    NonPositiveP { index: usize, value: i64 },
    #[error("q_{index} = {q} is below Q_{index} = {big_q}")]
    BelowFraming { index: usize, q: i64, big_q: i64 },
    #[error("p = {p} and q = {q} are not coprime")]
    NotCoprime { p: i64, q: i64 },
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_linking(lk: &[Vec<i64>]) -> Result<(), CableError> {
    let n = lk.len();
    for (i, row) in lk.iter().enumerate() {
        if row.len() != n || (0..n).any(|j| row[j] != lk[j][i]) {
            return Err(CableError::BadLinking);
        }
    }
    Ok(())
}

fn check_len(expected: usize, got: usize) -> Result<(), CableError> {
    if expected == got {
        Ok(())
    } else {
        Err(CableError::Shape { expected, got })
    }
}

/// `Q_i = -sum_{j != i} p_j lk(L_i, L_j)`.
pub fn q_of_p(linking: &[Vec<i64>], p: &[i64]) -> Result<Vec<i64>, CableError> {
    check_linking(linking)?;
    check_len(linking.len(), p.len())?;
    Ok((0..p.len())
        .map(|i| {
            -(0..p.len())
                .filter(|&j| j != i)
                .map(|j| p[j] * linking[i][j])
                .sum::<i64>()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableParams {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub big_q: Vec<i64>,
    /// Windings, when `q_i = p_i n_i + 1`.
    pub n: Option<Vec<i64>>,
    pub linking: Vec<Vec<i64>>,
}

impl CableParams {
    pub fn new(linking: Vec<Vec<i64>>, p: Vec<i64>, q: Vec<i64>) -> Result<Self, CableError> {
        let big_q = q_of_p(&linking, &p)?;
        check_len(p.len(), q.len())?;
        if let Some((index, &value)) = p.iter().enumerate().find(|(_, v)| **v < 1) {
            return Err(CableError::NonPositiveP { index, value });
        }
        Ok(CableParams {
            p,
            q,
            big_q,
            n: None,
            linking,
        })
    }

    /// `q_i = p_i n_i + 1`, always coprime to `p_i`.
    pub fn from_windings(linking: Vec<Vec<i64>>, p: Vec<i64>, n: Vec<i64>) -> Result<Self, CableError> {
        check_len(p.len(), n.len())?;
        let q = p.iter().zip(&n).map(|(p, n)| p * n + 1).collect();
        let mut c = Self::new(linking, p, q)?;
        c.n = Some(n);
        Ok(c)
    }

    pub fn components(&self) -> usize {
        self.p.len()
    }
}

/// `x(C, U) = x(L, j^*U) + sum (q_i - Q_i)(p_i - 1)`.
pub fn cable_thurston(x_base: i64, c: &CableParams) -> Result<i64, CableError> {
    let mut x = x_base;
    for i in 0..c.components() {
        if c.q[i] < c.big_q[i] {
            return Err(CableError::BelowFraming {
                index: i,
                q: c.q[i],
                big_q: c.big_q[i],
            });
        }
        x += (c.q[i] - c.big_q[i]) * (c.p[i] - 1);
    }
    Ok(x)
}

/// `y(C, U) = y(L, j^*U) + sum (q_i - 1 - Q_i)(p_i - 1) / 2`.
pub fn cable_y(y_base: Half, c: &CableParams) -> Half {
    let doubled: i64 = (0..c.components())
        .map(|i| (c.q[i] - 1 - c.big_q[i]) * (c.p[i] - 1))
        .sum();
    y_base + Half::from_doubled(doubled)
}

/// Top grading of the cable:
/// `h_1 = j_*(h_0) + 1/2 sum_i [(p_i-1)(q_i-1) + p_i sum_{j != i} (p_j-1) lk_ij] mu_i'`
/// with `j_*(mu_i) = p_i mu_i'`.
pub fn cable_top_grading(h0: &Exponent, c: &CableParams) -> Result<Exponent, CableError> {
    let l = c.components();
    check_len(l, h0.len())?;
    let coords = (0..l)
        .map(|i| {
            let cross: i64 = (0..l)
                .filter(|&j| j != i)
                .map(|j| (c.p[j] - 1) * c.linking[i][j])
                .sum();
            c.p[i] * h0.doubled()[i] + (c.p[i] - 1) * (c.q[i] - 1) + c.p[i] * cross
        })
        .collect();
    Ok(Exponent::from_doubled(coords))
}

/// Top Alexander grading `(p-1)(q-1)/2` of the `(p,q)` torus knot.
pub fn torus_knot_top(p: i64, q: i64) -> Result<Half, CableError> {
    if p < 1 {
        return Err(CableError::NonPositiveP { index: 0, value: p });
    }
    if gcd(p, q) != 1 {
        return Err(CableError::NotCoprime { p, q });
    }
    Ok(Half::from_doubled((p - 1) * (q - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn hopf() -> Vec<Vec<i64>> {
        vec![vec![0, 1], vec![1, 0]]
    }

    #[test]
    fn framings() {
        assert_eq!(q_of_p(&hopf(), &[2, 3]).unwrap(), vec![-3, -2]);
        assert_eq!(q_of_p(&[vec![0, 0], vec![0, 0]], &[5, 7]).unwrap(), vec![0, 0]);
        let chain = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert_eq!(q_of_p(&chain, &[2, 2, 2]).unwrap(), vec![-2, -4, -2]);
        assert_eq!(q_of_p(&hopf(), &[1]), Err(CableError::Shape { expected: 2, got: 1 }));
        assert_eq!(q_of_p(&[vec![0, 1], vec![2, 0]], &[1, 1]), Err(CableError::BadLinking));
    }

    #[test]
    fn hopf_cable() {
        let c = CableParams::new(hopf(), vec![2, 3], vec![7, 7]).unwrap();
        assert_eq!(cable_thurston(0, &c).unwrap(), 28);
        assert_eq!(cable_y(Half::from_doubled(5), &c), Half::from_int(15));
        let h1 = cable_top_grading(&Exponent::from_doubled(vec![1, 1]), &c).unwrap();
        assert_eq!(h1, Exponent::from_ints(&[6, 9]));
        assert_eq!(h1.pair(&[1, 1]), Half::from_int(15));
    }

    #[test]
    fn trivial_cables() {
        let ones = CableParams::new(hopf(), vec![1, 1], vec![4, 9]).unwrap();
        assert_eq!(cable_thurston(5, &ones).unwrap(), 5);
        assert_eq!(cable_y(Half::from_doubled(3), &ones), Half::from_doubled(3));
        let h0 = Exponent::from_doubled(vec![3, -1]);
        assert_eq!(cable_top_grading(&h0, &ones).unwrap(), h0);
        let at_q = CableParams::new(hopf(), vec![2, 3], vec![-3, -2]).unwrap();
        assert_eq!(cable_thurston(4, &at_q).unwrap(), 4);
        let above = CableParams::new(hopf(), vec![2, 3], vec![-2, -1]).unwrap();
        assert_eq!(cable_y(Half::from_int(2), &above), Half::from_int(2));
        let below = CableParams::new(hopf(), vec![2, 3], vec![-4, 0]).unwrap();
        assert!(matches!(cable_thurston(0, &below), Err(CableError::BelowFraming { index: 0, .. })));
    }

    #[test]
    fn torus_knots() {
        assert_eq!(torus_knot_top(3, 7).unwrap(), Half::from_int(6));
        assert_eq!(torus_knot_top(1, 5).unwrap(), Half::ZERO);
        assert_eq!(torus_knot_top(3, 4).unwrap(), Half::from_int(3));
        assert_eq!(torus_knot_top(4, 6), Err(CableError::NotCoprime { p: 4, q: 6 }));
        let u = CableParams::new(vec![vec![0]], vec![3], vec![7]).unwrap();
        let h1 = cable_top_grading(&Exponent::zero(1), &u).unwrap();
        assert_eq!(h1, Exponent::from_ints(&[6]));
    }

    #[test]
    fn windings() {
        let c = CableParams::from_windings(hopf(), vec![2, 3], vec![3, 2]).unwrap();
        assert_eq!(c.q, vec![7, 7]);
        assert_eq!(c.n, Some(vec![3, 2]));
    }

    fn linking_and_p() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>, Vec<i64>)> {
        (1usize..=4).prop_flat_map(|l| {
            (
                proptest::collection::vec(-3i64..=3, l * l),
                proptest::collection::vec(2i64..=6, l),
                proptest::collection::vec(1i64..=5, l),
            )
                .prop_map(move |(raw, p, n)| {
                    let mut lk = vec![vec![0; l]; l];
                    for i in 0..l {
                        for j in i + 1..l {
                            lk[i][j] = raw[i * l + j];
                            lk[j][i] = raw[i * l + j];
                        }
                    }
                    (lk, p, n)
                })
        })
    }

    proptest! {
        #[test]
        fn norm_identity_survives_cabling((lk, p, n) in linking_and_p(), y2 in 0i64..40) {
            let c = CableParams::from_windings(lk, p, n).unwrap();
            prop_assume!(c.q.iter().zip(&c.big_q).all(|(q, bq)| q >= bq));
            let y = Half::from_doubled(y2);
            let sum_p: i64 = c.p.iter().sum();
            let x = cable_thurston(y.twice() - sum_p, &c).unwrap();
            prop_assert_eq!(cable_y(y, &c).twice() - x, c.components() as i64);
        }

        #[test]
        fn top_grading_is_affine((lk, p, n) in linking_and_p(), a in -6i64..6, b in -6i64..6) {
            let c = CableParams::from_windings(lk, p, n).unwrap();
            let l = c.components();
            let h = Exponent::from_doubled(vec![a; l]);
            let k = Exponent::from_doubled(vec![b; l]);
            let base = cable_top_grading(&Exponent::zero(l), &c).unwrap();
            let lhs = &cable_top_grading(&(&h + &k), &c).unwrap() - &base;
            let rhs = &(&cable_top_grading(&h, &c).unwrap() - &base)
                + &(&cable_top_grading(&k, &c).unwrap() - &base);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn framing_is_linear_in_p((lk, p, _n) in linking_and_p(), k in 1i64..4) {
            let q1 = q_of_p(&lk, &p).unwrap();
            let scaled: Vec<i64> = p.iter().map(|v| v * k).collect();
            let qk = q_of_p(&lk, &scaled).unwrap();
            prop_assert_eq!(qk, q1.iter().map(|v| v * k).collect::<Vec<_>>());
        }
    }
}
