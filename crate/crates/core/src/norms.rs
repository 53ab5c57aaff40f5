//! The Floer norm `y`, the Thurston norm `x` and their unit balls.
//!
//! For a link with no trivial components, `x(PD[h]) + sum |<h, mu_i>| = 2 y(h)`
//! where `y` is the support function of the link Floer polytope. For
//! connected alternating projections the Floer ranks are the absolute values
//! of the coefficients of the Euler polynomial, which makes everything here
//! computable from a PD code.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::alexander::{self, AlexanderError};
use crate::half::Half;
use crate::laurent::{Exponent, MultivariateLaurent};
use crate::links::{CohomologyClass, LinkDiagram};
use crate::polytope::{self, LatticePolytope, PolytopeError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NormError {
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("diagram projection is not connected")]
    Disconnected,
    #[error("Euler polynomial vanishes")]
    ZeroPolynomial,
    #[error("polytope is not centrally symmetric")]
    NotSymmetric,
    #[error("erosion by the cube does not reconstruct the polytope")]
    ReconstructionFailed,
    #[error("{0} is not a vertex of the dual Thurston polytope")]
    NotAVertex(Exponent),
    #[error("no graded ranks given")]
    EmptyRanks,
    #[error("class has {got} pairings, link has {expected} components")]
    ClassLength { expected: usize, got: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
}

/// Norms of one cohomology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    pub h: CohomologyClass,
    pub y: Half,
    pub x: i64,
    pub meridian_sum: i64,
}

impl NormReport {
    /// A negative `x` means the input violates the hypotheses (for example a
    /// trivial component); the value is reported as computed.
    pub fn hypothesis_violation(&self) -> bool {
        self.x < 0
    }
}

/// Ranks of link Floer homology and Euler characteristics per grading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedRanks {
    pub ranks: BTreeMap<Exponent, u64>,
    pub euler: BTreeMap<Exponent, i64>,
}

impl GradedRanks {
    /// Ranks forced to equal `|chi|` in every grading.
    pub fn from_euler(p: &MultivariateLaurent) -> Self {
        let mut r = GradedRanks::default();
        for (e, c) in p.terms() {
            r.ranks.insert(e.clone(), c.unsigned_abs());
            r.euler.insert(e.clone(), c);
        }
        r
    }

    pub fn rank(&self, s: &Exponent) -> u64 {
        self.ranks.get(s).copied().unwrap_or(0)
    }

    pub fn total_rank(&self) -> u64 {
        self.ranks.values().sum()
    }

    /// Gradings with nonzero rank.
    pub fn support(&self) -> impl Iterator<Item = &Exponent> + '_ {
        self.ranks.iter().filter(|(_, r)| **r > 0).map(|(s, _)| s)
    }
}

/// Floer polytope and ranks of a connected alternating diagram.
pub fn floer_polytope_alternating(
    d: &LinkDiagram,
) -> Result<(LatticePolytope, GradedRanks), NormError> {
    if !d.is_alternating() {
        return Err(NormError::NotAlternating);
    }
    if !d.is_connected_projection() {
        return Err(NormError::Disconnected);
    }
    let e = alexander::euler_polynomial(d)?;
    if e.is_zero() {
        return Err(NormError::ZeroPolynomial);
    }
    Ok((polytope::newton(&e)?, GradedRanks::from_euler(&e)))
}

/// `y(h)` from the Floer polytope and `x = 2y - sum |h_i|`.
pub fn thurston_norm(p_floer: &LatticePolytope, h: &CohomologyClass) -> Result<NormReport, NormError> {
    if h.len() != p_floer.dim() {
        return Err(NormError::ClassLength {
            expected: p_floer.dim(),
            got: h.len(),
        });
    }
    let y = p_floer.y_value(h.pairings())?;
    let meridian_sum = h.meridian_sum();
    Ok(NormReport {
        h: h.clone(),
        y,
        x: y.twice() - meridian_sum,
        meridian_sum,
    })
}

/// Unit ball of the dual Thurston norm: `2 P_floer` eroded by `[-1,1]^l`.
pub fn dual_thurston_polytope(p_floer: &LatticePolytope) -> Result<LatticePolytope, NormError> {
    if p_floer.is_empty() {
        return Err(PolytopeError::Empty.into());
    }
    if !p_floer.is_centrally_symmetric()? {
        return Err(NormError::NotSymmetric);
    }
    let er = p_floer.scale(Half::from_int(2))?.erode_hypercube()?;
    if !er.reconstructed {
        return Err(NormError::ReconstructionFailed);
    }
    Ok(er.polytope)
}

/// Lower bound for `x(PD[h])` from the Newton polytope of the Euler
/// polynomial. When the polynomial vanishes only `x >= 0` is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LowerBound {
    Bound(i64),
    NoInformation,
}

impl LowerBound {
    pub fn value(self) -> i64 {
        match self {
            LowerBound::Bound(v) => v,
            LowerBound::NoInformation => 0,
        }
    }
}

pub fn alexander_lower_bound(d: &LinkDiagram, h: &CohomologyClass) -> Result<LowerBound, NormError> {
    if h.len() != d.component_count() {
        return Err(NormError::ClassLength {
            expected: d.component_count(),
            got: h.len(),
        });
    }
    let e = alexander::euler_polynomial(d)?;
    if e.is_zero() {
        return Ok(LowerBound::NoInformation);
    }
    let y = polytope::newton(&e)?.y_value(h.pairings())?;
    Ok(LowerBound::Bound(y.twice() - h.meridian_sum()))
}

/// Top total grading `m` of the ranks and, when it is attained exactly
/// once, the resulting value `2m` of `min (l - chi(F))` over Seifert
/// surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertBound {
    pub m: Half,
    pub maximizers: Vec<Exponent>,
    pub value: Option<i64>,
}

impl SeifertBound {
    pub fn unique(&self) -> bool {
        self.maximizers.len() == 1
    }
}

pub fn seifert_complexity_bound(r: &GradedRanks, components: usize) -> Result<SeifertBound, NormError> {
    let mut m: Option<Half> = None;
    let mut maximizers = Vec::new();
    for s in r.support() {
        if s.len() != components {
            return Err(NormError::ClassLength {
                expected: components,
                got: s.len(),
            });
        }
        let t = s.coordinate_sum();
        match m {
            Some(cur) if t < cur => {}
            Some(cur) if t == cur => maximizers.push(s.clone()),
            _ => {
                m = Some(t);
                maximizers.clear();
                maximizers.push(s.clone());
            }
        }
    }
    let m = m.ok_or(NormError::EmptyRanks)?;
    let value = (maximizers.len() == 1).then(|| m.twice());
    Ok(SeifertBound {
        m,
        maximizers,
        value,
    })
}

/// The points `s(P)` attached to a vertex `P` of the dual Thurston polytope
/// and their ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberedFaceReport {
    pub vertex: Exponent,
    pub extremal: Vec<(Exponent, u64)>,
}

impl FiberedFaceReport {
    /// Every point of `s(P)` has rank one. Necessary for the face to be
    /// fibred, not sufficient.
    pub fn consistent_with_fibered(&self) -> bool {
        !self.extremal.is_empty() && self.extremal.iter().all(|(_, r)| *r == 1)
    }
}

pub fn fibered_face_certificate(
    p_floer: &LatticePolytope,
    r: &GradedRanks,
    vertex: &Exponent,
) -> Result<FiberedFaceReport, NormError> {
    let dual = dual_thurston_polytope(p_floer)?;
    let dv = dual.vertices()?;
    // A one-point ball has no faces to be fibred.
    if dv.len() < 2 || !dv.contains(vertex) {
        return Err(NormError::NotAVertex(vertex.clone()));
    }
    let floer_vertices = p_floer.vertices()?;
    let l = vertex.len();
    let mut extremal = Vec::new();
    for mask in 0..(1usize << l) {
        // (P + sum eps_i mu_i^*) / 2 in doubled coordinates is P + eps.
        let mut coords = Vec::with_capacity(l);
        let mut ok = true;
        for (i, &d) in vertex.doubled().iter().enumerate() {
            let eps = if mask >> i & 1 == 1 { 1 } else { -1 };
            if d % 2 != 0 {
                ok = false;
                break;
            }
            coords.push(d / 2 + eps);
        }
        if !ok {
            continue;
        }
        let c = Exponent::from_doubled(coords);
        if floer_vertices.contains(&c) && !extremal.iter().any(|(e, _)| e == &c) {
            let rank = r.rank(&c);
            extremal.push((c, rank));
        }
    }
    extremal.sort();
    Ok(FiberedFaceReport {
        vertex: vertex.clone(),
        extremal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::parse_pd;
    use alloc::vec;

    const HOPF: &str = "[[4,2,1,3],[2,4,3,1]]";
    const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";

    fn ex(c: &[i64]) -> Exponent {
        Exponent::from_doubled(c.to_vec())
    }

    #[test]
    fn hopf_norms() {
        let d = parse_pd(HOPF).unwrap();
        let (p, r) = floer_polytope_alternating(&d).unwrap();
        for s in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            assert_eq!(r.rank(&ex(&s)), 1);
        }
        assert_eq!(r.total_rank(), 4);
        let n = thurston_norm(&p, &CohomologyClass::new(vec![1, 1])).unwrap();
        assert_eq!((n.y, n.x), (Half::from_int(1), 0));
        assert!(!n.hypothesis_violation());
        let dual = dual_thurston_polytope(&p).unwrap();
        assert_eq!(dual.vertices().unwrap(), vec![ex(&[0, 0])]);
        assert_eq!(
            alexander_lower_bound(&d, &CohomologyClass::new(vec![1, 0])).unwrap(),
            LowerBound::Bound(0)
        );
        let sb = seifert_complexity_bound(&r, 2).unwrap();
        assert_eq!((sb.m, sb.value), (Half::from_int(1), Some(2)));
        assert!(matches!(
            fibered_face_certificate(&p, &r, &ex(&[0, 0])),
            Err(NormError::NotAVertex(_))
        ));
    }

    #[test]
    fn trefoil_norms() {
        let d = parse_pd(TREFOIL).unwrap();
        let (p, r) = floer_polytope_alternating(&d).unwrap();
        assert_eq!(r.ranks.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        let n = thurston_norm(&p, &CohomologyClass::new(vec![1])).unwrap();
        assert_eq!((n.y, n.x), (Half::from_int(1), 1));
        let dual = dual_thurston_polytope(&p).unwrap();
        assert_eq!(dual.vertices().unwrap(), vec![ex(&[-2]), ex(&[2])]);
        let sb = seifert_complexity_bound(&r, 1).unwrap();
        assert_eq!(sb.value, Some(2));
        let cert = fibered_face_certificate(&p, &r, &ex(&[2])).unwrap();
        assert_eq!(cert.extremal, vec![(ex(&[2]), 1)]);
        assert!(cert.consistent_with_fibered());
    }

    #[test]
    fn negative_x_is_flagged() {
        let p = LatticePolytope::from_points(1, [ex(&[0])]).unwrap();
        let n = thurston_norm(&p, &CohomologyClass::new(vec![2])).unwrap();
        assert_eq!(n.x, -2);
        assert!(n.hypothesis_violation());
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad = parse_pd("[[4,2,5,1],[3,6,4,1],[5,2,6,3]]").unwrap();
        assert_eq!(
            floer_polytope_alternating(&bad).unwrap_err(),
            NormError::NotAlternating
        );
        let lopsided = LatticePolytope::from_points(1, [ex(&[0]), ex(&[2])]).unwrap();
        assert_eq!(
            dual_thurston_polytope(&lopsided).unwrap_err(),
            NormError::NotSymmetric
        );
        assert!(matches!(
            seifert_complexity_bound(&GradedRanks::default(), 1),
            Err(NormError::EmptyRanks)
        ));
    }

    #[test]
    fn two_maximizers_give_no_value() {
        let mut r = GradedRanks::default();
        r.ranks.insert(ex(&[2, 0]), 1);
        r.ranks.insert(ex(&[0, 2]), 3);
        r.ranks.insert(ex(&[-2, 0]), 1);
        let sb = seifert_complexity_bound(&r, 2).unwrap();
        assert!(!sb.unique());
        assert_eq!(sb.value, None);
    }
}
