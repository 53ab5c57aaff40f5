//! Multivariable Alexander polynomial by Fox calculus on the Wirtinger
//! presentation, and the Euler-characteristic polynomial
//! `prod_i (T_i^{1/2} - T_i^{-1/2}) * Delta_L`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::laurent::{euler_factor, Exponent, LaurentError, MultivariateLaurent};
use crate::links::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlexanderError {
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("row {row} / column {col} out of range for a {size}x{size} Fox matrix")]
    MinorOutOfRange { row: usize, col: usize, size: usize },
    #[error("Fox matrix is not square ({rows} relations, {cols} generators)")]
    NotSquare { rows: usize, cols: usize },
    #[error("normalized polynomial is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A letter `g^{+-1}` of a group word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub power: i8,
}

/// Wirtinger presentation: one generator per over-arc and one relation per
/// crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    /// Edge labels making up each over-arc.
    pub arcs: Vec<Vec<i64>>,
    pub component_of: Vec<usize>,
    pub relations: Vec<Vec<Letter>>,
    pub nvars: usize,
}

impl WirtingerPresentation {
    pub fn generator_count(&self) -> usize {
        self.arcs.len()
    }

    /// Image of a word in `H_1 = Z^l`.
    pub fn abelianize(&self, word: &[Letter]) -> Vec<i64> {
        let mut v = vec![0; self.nvars];
        for l in word {
            v[self.component_of[l.generator]] += l.power as i64;
        }
        v
    }

    /// Abelianized Fox derivative `d word / d generator`.
    pub fn fox_derivative(&self, word: &[Letter], generator: usize) -> MultivariateLaurent {
        let mut terms = Vec::new();
        let mut prefix = vec![0i64; self.nvars];
        for l in word {
            let comp = self.component_of[l.generator];
            if l.power > 0 {
                if l.generator == generator {
                    terms.push((Exponent::from_ints(&prefix), 1));
                }
                prefix[comp] += 1;
            } else {
                prefix[comp] -= 1;
                if l.generator == generator {
                    terms.push((Exponent::from_ints(&prefix), -1));
                }
            }
        }
        MultivariateLaurent::from_terms(self.nvars, terms).expect("exponent lengths agree")
    }

    /// Relations x generators matrix of abelianized Fox derivatives.
    pub fn fox_matrix(&self) -> Vec<Vec<MultivariateLaurent>> {
        self.relations
            .iter()
            .map(|r| {
                (0..self.generator_count())
                    .map(|g| self.fox_derivative(r, g))
                    .collect()
            })
            .collect()
    }
}

/// Builds the Wirtinger presentation of a diagram.
///
/// At a crossing with over-arc `b`, incoming under-arc `a` and outgoing
/// under-arc `c` the relation is `b a b^-1 c^-1` for a positive crossing and
/// `b^-1 a b c^-1` for a negative one.
pub fn wirtinger(d: &LinkDiagram) -> Result<WirtingerPresentation, AlexanderError> {
    if d.crossing_count() == 0 {
        return Err(AlexanderError::NoCrossings);
    }
    let labels: Vec<i64> = d.arcs().iter().copied().collect();
    let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in d.crossings() {
        let (a, b) = (
            find(&mut parent, index[&c.over_in]),
            find(&mut parent, index[&c.over_out]),
        );
        parent[a] = b;
    }
    let mut arc_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut arcs: Vec<Vec<i64>> = Vec::new();
    let mut arc_of_label: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        let root = find(&mut parent, i);
        let arc = *arc_of_root.entry(root).or_insert_with(|| {
            arcs.push(Vec::new());
            arcs.len() - 1
        });
        arcs[arc].push(l);
        arc_of_label.insert(l, arc);
    }
    let component_of = arcs
        .iter()
        .map(|a| d.component_of(a[0]).expect("labelled edge"))
        .collect();
    let relations = d
        .crossings()
        .iter()
        .map(|c| {
            let a = arc_of_label[&c.under_in];
            let b = arc_of_label[&c.over_in];
            let cc = arc_of_label[&c.under_out];
            let s = c.sign;
            vec![
                Letter { generator: b, power: s },
                Letter { generator: a, power: 1 },
                Letter { generator: b, power: -s },
                Letter { generator: cc, power: -1 },
            ]
        })
        .collect();
    Ok(WirtingerPresentation {
        arcs,
        component_of,
        relations,
        nvars: d.component_count(),
    })
}

/// Determinant over the Laurent ring by fraction-free (Bareiss)
/// elimination. Every intermediate division is exact.
pub fn determinant(
    matrix: &[Vec<MultivariateLaurent>],
    nvars: usize,
) -> Result<MultivariateLaurent, LaurentError> {
    let n = matrix.len();
    if n == 0 {
        return Ok(MultivariateLaurent::one(nvars));
    }
    let mut a: Vec<Vec<MultivariateLaurent>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = MultivariateLaurent::one(nvars);
    for k in 0..n {
        // Prefer the sparsest nonzero pivot.
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].nterms());
        let Some(p) = pivot else {
            return Ok(MultivariateLaurent::zero(nvars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].checked_mul(&a[k][k])?;
                let rhs = a[i][k].checked_mul(&a[k][j])?;
                a[i][j] = lhs.checked_sub(&rhs)?.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// The minor obtained by deleting relation `row` and generator `col`,
/// divided by `T_{c(col)} - 1` when `l >= 2`. Not normalized.
pub fn alexander_minor(
    d: &LinkDiagram,
    row: usize,
    col: usize,
) -> Result<MultivariateLaurent, AlexanderError> {
    let pres = wirtinger(d)?;
    let nvars = pres.nvars;
    let fox = pres.fox_matrix();
    let (rows, cols) = (fox.len(), pres.generator_count());
    if rows != cols {
        return Err(AlexanderError::NotSquare { rows, cols });
    }
    if row >= rows || col >= cols {
        return Err(AlexanderError::MinorOutOfRange {
            row,
            col,
            size: rows,
        });
    }
    let minor: Vec<Vec<MultivariateLaurent>> = fox
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect();
    let det = determinant(&minor, nvars)?;
    if nvars == 1 {
        return Ok(det);
    }
    let t = MultivariateLaurent::variable(nvars, pres.component_of[col]);
    let t_minus_one = t.checked_sub(&MultivariateLaurent::one(nvars))?;
    Ok(det.div_exact(&t_minus_one)?)
}

/// Centers the support and fixes the sign so the lexicographically largest
/// term is positive.
pub fn normalize(p: &MultivariateLaurent) -> Result<MultivariateLaurent, AlexanderError> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let centered = p.center()?;
    if !centered.is_symmetric() {
        return Err(AlexanderError::NotSymmetric);
    }
    Ok(centered.normalize_sign())
}

/// Every component passes under at least one crossing; otherwise the
/// component can be lifted off the diagram and the link splits.
fn has_under_everywhere(d: &LinkDiagram) -> bool {
    let mut seen = vec![false; d.component_count()];
    for c in d.crossings() {
        seen[c.under_component] = true;
    }
    seen.into_iter().all(|s| s)
}

/// Symmetrized multivariable Alexander polynomial (the ordinary one for
/// knots), normalized by [`normalize`].
pub fn alexander_polynomial(d: &LinkDiagram) -> Result<MultivariateLaurent, AlexanderError> {
    let nvars = d.component_count();
    if d.crossing_count() == 0 {
        return Ok(MultivariateLaurent::one(nvars));
    }
    if !has_under_everywhere(d) {
        return Ok(MultivariateLaurent::zero(nvars));
    }
    normalize(&alexander_minor(d, 0, 0)?)
}

/// `prod (T_i^{1/2} - T_i^{-1/2}) * Delta_L` for links, `Delta_K` for knots.
pub fn euler_polynomial(d: &LinkDiagram) -> Result<MultivariateLaurent, AlexanderError> {
    let delta = alexander_polynomial(d)?;
    euler_from_alexander(&delta)
}

pub fn euler_from_alexander(
    delta: &MultivariateLaurent,
) -> Result<MultivariateLaurent, AlexanderError> {
    if delta.nvars() == 1 {
        return Ok(delta.clone());
    }
    Ok(euler_factor(delta.nvars())?.checked_mul(delta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::parse_pd;

    fn poly1(terms: &[(i64, i64)]) -> MultivariateLaurent {
        MultivariateLaurent::from_terms(
            1,
            terms
                .iter()
                .map(|&(e, c)| (Exponent::from_doubled(vec![e]), c)),
        )
        .unwrap()
    }

    #[test]
    fn trefoil_presentation() {
        let d = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let p = wirtinger(&d).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relations.len(), 3);
        for r in &p.relations {
            assert_eq!(r.len(), 4);
            assert_eq!(p.abelianize(r), vec![0]);
        }
    }

    #[test]
    fn hopf_presentation() {
        let d = parse_pd("[[4,2,1,3],[2,4,3,1]]").unwrap();
        let p = wirtinger(&d).unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relations.len(), 2);
        for r in &p.relations {
            assert_eq!(p.abelianize(r), vec![0, 0]);
        }
    }

    #[test]
    fn trefoil_polynomial() {
        let d = parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap();
        let delta = alexander_polynomial(&d).unwrap();
        assert_eq!(delta, poly1(&[(2, 1), (0, -1), (-2, 1)]));
        assert_eq!(euler_polynomial(&d).unwrap(), delta);
    }

    #[test]
    fn hopf_polynomial() {
        let d = parse_pd("[[4,2,1,3],[2,4,3,1]]").unwrap();
        assert_eq!(
            alexander_polynomial(&d).unwrap(),
            MultivariateLaurent::one(2)
        );
        assert_eq!(euler_polynomial(&d).unwrap(), euler_factor(2).unwrap());
    }

    #[test]
    fn no_crossings() {
        let u = LinkDiagram::unknot();
        assert_eq!(wirtinger(&u), Err(AlexanderError::NoCrossings));
        assert_eq!(
            alexander_polynomial(&u).unwrap(),
            MultivariateLaurent::one(1)
        );
    }

    #[test]
    fn split_link_vanishes() {
        let split = parse_pd(
            "[[1,4,2,5],[3,6,4,1],[5,2,6,3],[11,14,12,15],[13,16,14,11],[15,12,16,13]]",
        )
        .unwrap();
        assert!(alexander_polynomial(&split).unwrap().is_zero());
    }

    #[test]
    fn fox_derivative_of_inverse_letters() {
        // d(b^-1 a b c^-1)/db = -b^-1 + b^-1 a  ->  t^-1 (t - 1) in one variable.
        let p = WirtingerPresentation {
            arcs: vec![vec![1], vec![2], vec![3]],
            component_of: vec![0, 0, 0],
            relations: vec![],
            nvars: 1,
        };
        let w = [
            Letter { generator: 1, power: -1 },
            Letter { generator: 0, power: 1 },
            Letter { generator: 1, power: 1 },
            Letter { generator: 2, power: -1 },
        ];
        assert_eq!(p.fox_derivative(&w, 1), poly1(&[(-2, -1), (0, 1)]));
        assert_eq!(p.fox_derivative(&w, 0), poly1(&[(-2, 1)]));
        assert_eq!(p.fox_derivative(&w, 2), poly1(&[(0, -1)]));
    }
}
