//! Lattice polytopes with vertices in the half-integer lattice.
//!
//! A polytope is stored as a finite point set (doubled coordinates). Its
//! convex hull is computed exactly on first use, for ambient dimension at
//! most [`MAX_HULL_DIM`], and cached.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::half::Half;
use crate::laurent::{Exponent, MultivariateLaurent};
use crate::linalg;

/// Largest ambient dimension for which hulls are computed.
pub const MAX_HULL_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("Newton polytope of the zero polynomial is empty")]
    ZeroPolynomial,
    #[error("polytope is empty")]
    Empty,
    #[error("dimension mismatch: {expected} vs {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hull not computed in dimension {0} (limit {MAX_HULL_DIM})")]
    HullUnavailable(usize),
    #[error("scale factor {0} is not a positive half-integer keeping the lattice")]
    BadScale(Half),
}

/// `a . x <= b` (or `= b` for equations), in doubled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Halfspace {
    normal: Vec<i128>,
    offset: i128,
}

#[derive(Clone, Debug)]
struct Hull {
    vertices: Vec<Exponent>,
    /// Equations of the affine hull, in ambient coordinates.
    equations: Vec<Halfspace>,
    /// Coordinates spanning the affine hull.
    chart: Vec<usize>,
    /// Facet inequalities in chart coordinates.
    facets: Vec<Halfspace>,
}

/// A finite set of half-integer points together with its convex hull.
pub struct LatticePolytope {
    dim: usize,
    points: BTreeSet<Exponent>,
    hull: spin::Once<Result<Hull, PolytopeError>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        let hull = spin::Once::new();
        if let Some(h) = self.hull.get() {
            hull.call_once(|| h.clone());
        }
        LatticePolytope {
            dim: self.dim,
            points: self.points.clone(),
            hull,
        }
    }
}

impl core::fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("points", &self.points)
            .finish()
    }
}

/// Result of eroding a polytope by the cube `[-1,1]^l`.
#[derive(Clone, Debug)]
pub struct Erosion {
    pub polytope: LatticePolytope,
    /// `polytope + [-1,1]^l` has the same hull as the input.
    pub reconstructed: bool,
}

impl Erosion {
    pub fn is_empty(&self) -> bool {
        self.polytope.is_empty()
    }
}

fn dot(a: &[i128], x: &[i64]) -> i128 {
    a.iter().zip(x).map(|(p, q)| p * (*q as i128)).sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(mut h: Halfspace) -> Halfspace {
    let g = h.normal.iter().fold(h.offset, |g, &v| gcd(g, v));
    if g > 1 {
        for v in &mut h.normal {
            *v /= g;
        }
        h.offset /= g;
    }
    h
}

/// Normal to the hyperplane through `k` points of `Z^k` (cofactor expansion).
fn hyperplane_normal(pts: &[&Vec<i64>]) -> Vec<i128> {
    let k = pts[0].len();
    let rows: Vec<Vec<i128>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(pts[0]).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| *v)
                        .collect()
                })
                .collect();
            let d = linalg::determinant(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, f: &mut F) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn compute_hull(dim: usize, points: &BTreeSet<Exponent>) -> Result<Hull, PolytopeError> {
    if dim > MAX_HULL_DIM {
        return Err(PolytopeError::HullUnavailable(dim));
    }
    let pts: Vec<&Exponent> = points.iter().collect();
    let Some(p0) = pts.first() else {
        return Ok(Hull {
            vertices: Vec::new(),
            equations: Vec::new(),
            chart: Vec::new(),
            facets: Vec::new(),
        });
    };
    let diffs: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| (*p - *p0).doubled().to_vec())
        .collect();
    let equations: Vec<Halfspace> = linalg::integer_kernel(&diffs, dim)
        .into_iter()
        .map(|a| {
            let normal: Vec<i128> = a.iter().map(|&v| v as i128).collect();
            let offset = dot(&normal, p0.doubled());
            Halfspace { normal, offset }
        })
        .collect();
    // Choose coordinates on which the projection is injective.
    let mut chart = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let mut trial = chart.clone();
        trial.push(c);
        let sub: Vec<Vec<i64>> = diffs
            .iter()
            .map(|d| trial.iter().map(|&i| d[i]).collect())
            .collect();
        let rk = linalg::rank(&sub, trial.len());
        if rk > r {
            r = rk;
            chart = trial;
        }
    }
    let k = chart.len();
    let proj: Vec<Vec<i64>> = pts
        .iter()
        .map(|p| chart.iter().map(|&i| p.doubled()[i]).collect())
        .collect();

    let mut facets: BTreeSet<Halfspace> = BTreeSet::new();
    let vertex_idx: Vec<usize> = match k {
        0 => vec![0],
        1 => {
            let lo = (0..proj.len()).min_by_key(|&i| proj[i][0]).unwrap();
            let hi = (0..proj.len()).max_by_key(|&i| proj[i][0]).unwrap();
            facets.insert(Halfspace {
                normal: vec![-1],
                offset: -(proj[lo][0] as i128),
            });
            facets.insert(Halfspace {
                normal: vec![1],
                offset: proj[hi][0] as i128,
            });
            vec![lo, hi]
        }
        _ => {
            let n = proj.len();
            for_each_subset(n, k, &mut |sub: &[usize]| {
                let chosen: Vec<&Vec<i64>> = sub.iter().map(|&i| &proj[i]).collect();
                let normal = hyperplane_normal(&chosen);
                if normal.iter().all(|v| *v == 0) {
                    return;
                }
                let offset = dot(&normal, chosen[0]);
                let (mut above, mut below) = (false, false);
                for p in &proj {
                    let v = dot(&normal, p) - offset;
                    above |= v > 0;
                    below |= v < 0;
                    if above && below {
                        return;
                    }
                }
                let h = if above {
                    Halfspace {
                        normal: normal.iter().map(|v| -v).collect(),
                        offset: -offset,
                    }
                } else {
                    Halfspace { normal, offset }
                };
                facets.insert(primitive(h));
            });
            (0..proj.len())
                .filter(|&i| {
                    let tight: Vec<Vec<i64>> = facets
                        .iter()
                        .filter(|f| dot(&f.normal, &proj[i]) == f.offset)
                        .map(|f| f.normal.iter().map(|&v| v as i64).collect())
                        .collect();
                    linalg::rank(&tight, k) == k
                })
                .collect()
        }
    };
    let mut vertices: Vec<Exponent> = vertex_idx.into_iter().map(|i| pts[i].clone()).collect();
    vertices.sort();
    vertices.dedup();
    Ok(Hull {
        vertices,
        equations,
        chart,
        facets: facets.into_iter().collect(),
    })
}

impl LatticePolytope {
    /// Polytope spanned by the given points; all must have length `dim`.
    pub fn from_points<I>(dim: usize, points: I) -> Result<Self, PolytopeError>
    where
        I: IntoIterator<Item = Exponent>,
    {
        let mut set = BTreeSet::new();
        for p in points {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            set.insert(p);
        }
        Ok(LatticePolytope {
            dim,
            points: set,
            hull: spin::Once::new(),
        })
    }

    pub fn empty(dim: usize) -> Self {
        LatticePolytope {
            dim,
            points: BTreeSet::new(),
            hull: spin::Once::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &BTreeSet<Exponent> {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn hull(&self) -> Result<&Hull, PolytopeError> {
        self.hull
            .call_once(|| compute_hull(self.dim, &self.points))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Whether the hull can be computed (`dim <= MAX_HULL_DIM`).
    pub fn hull_available(&self) -> bool {
        self.dim <= MAX_HULL_DIM
    }

    /// Hull vertices in lexicographic order.
    pub fn vertices(&self) -> Result<Vec<Exponent>, PolytopeError> {
        Ok(self.hull()?.vertices.clone())
    }

    /// Points defining the polytope: hull vertices when available,
    /// otherwise the raw point set.
    fn generators(&self) -> Vec<Exponent> {
        match self.hull() {
            Ok(h) => h.vertices.clone(),
            Err(_) => self.points.iter().cloned().collect(),
        }
    }

    pub fn contains(&self, v: &Exponent) -> Result<bool, PolytopeError> {
        self.check_dim(v.len())?;
        let h = self.hull()?;
        if h.vertices.is_empty() {
            return Ok(false);
        }
        let x = v.doubled();
        if h.equations.iter().any(|e| dot(&e.normal, x) != e.offset) {
            return Ok(false);
        }
        let y: Vec<i64> = h.chart.iter().map(|&i| x[i]).collect();
        Ok(h.facets.iter().all(|f| dot(&f.normal, &y) <= f.offset))
    }

    /// Same convex hull.
    pub fn equal(&self, other: &Self) -> Result<bool, PolytopeError> {
        if self.dim != other.dim {
            return Ok(false);
        }
        Ok(self.hull()?.vertices == other.hull()?.vertices)
    }

    fn check_dim(&self, got: usize) -> Result<(), PolytopeError> {
        if got != self.dim {
            Err(PolytopeError::DimensionMismatch {
                expected: self.dim,
                got,
            })
        } else {
            Ok(())
        }
    }

    /// `max_s <s, h>`.
    pub fn support_value(&self, h: &[i64]) -> Result<Half, PolytopeError> {
        self.check_dim(h.len())?;
        self.points
            .iter()
            .map(|s| s.pair(h))
            .max()
            .ok_or(PolytopeError::Empty)
    }

    /// `max_s |<s, h>|`.
    pub fn y_value(&self, h: &[i64]) -> Result<Half, PolytopeError> {
        self.check_dim(h.len())?;
        self.points
            .iter()
            .map(|s| s.pair(h).abs())
            .max()
            .ok_or(PolytopeError::Empty)
    }

    /// Pointwise scaling by a positive half-integer.
    pub fn scale(&self, k: Half) -> Result<Self, PolytopeError> {
        if k.doubled() <= 0 {
            return Err(PolytopeError::BadScale(k));
        }
        let mut out = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut coords = Vec::with_capacity(self.dim);
            for &d in p.doubled() {
                let prod = d * k.doubled();
                if prod % 2 != 0 {
                    return Err(PolytopeError::BadScale(k));
                }
                coords.push(prod / 2);
            }
            out.push(Exponent::from_doubled(coords));
        }
        Self::from_points(self.dim, out)
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self, PolytopeError> {
        self.check_dim(other.dim)?;
        let a = self.generators();
        let b = other.generators();
        let mut sums = Vec::with_capacity(a.len() * b.len());
        for p in &a {
            for q in &b {
                sums.push(p + q);
            }
        }
        Self::from_points(self.dim, sums)
    }

    pub fn negate(&self) -> Self {
        Self::from_points(self.dim, self.points.iter().map(|p| -p)).expect("same dimension")
    }

    /// The hull is invariant under `s -> -s`.
    pub fn is_centrally_symmetric(&self) -> Result<bool, PolytopeError> {
        let v = self.vertices()?;
        let set: BTreeSet<&Exponent> = v.iter().collect();
        Ok(v.iter().all(|p| set.contains(&-p)))
    }

    /// Minkowski difference `P - [-1,1]^l` by a scan of the half-integer
    /// lattice, with a reconstruction check.
    pub fn erode_hypercube(&self) -> Result<Erosion, PolytopeError> {
        let hull = self.hull()?;
        if hull.vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let dim = self.dim;
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for v in &hull.vertices {
            for (i, &d) in v.doubled().iter().enumerate() {
                lo[i] = lo[i].min(d + 2);
                hi[i] = hi[i].max(d - 2);
            }
        }
        let corners = hypercube(dim, Half::from_int(1)).points;
        let mut kept = Vec::new();
        if lo.iter().zip(&hi).all(|(l, h)| l <= h) {
            let mut cur = lo.clone();
            'scan: loop {
                let v = Exponent::from_doubled(cur.clone());
                let mut inside = true;
                for c in &corners {
                    if !self.contains(&(&v + c))? {
                        inside = false;
                        break;
                    }
                }
                if inside {
                    kept.push(v);
                }
                let mut i = 0;
                loop {
                    if i == dim {
                        break 'scan;
                    }
                    if cur[i] < hi[i] {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = lo[i];
                    i += 1;
                }
            }
        }
        let eroded = Self::from_points(dim, kept)?;
        let reconstructed = if eroded.is_empty() {
            false
        } else {
            let cube = hypercube(dim, Half::from_int(1));
            eroded.minkowski_sum(&cube)?.equal(self)?
        };
        Ok(Erosion {
            polytope: eroded,
            reconstructed,
        })
    }

    /// Vertices of a 2-dimensional polygon in counterclockwise order,
    /// starting from the lexicographically smallest vertex.
    pub fn polygon(&self) -> Result<Vec<Exponent>, PolytopeError> {
        let mut v = self.vertices()?;
        if self.dim != 2 || v.len() < 3 {
            return Ok(v);
        }
        let o = v[0].clone();
        let rest = &mut v[1..];
        let cross = |a: &Exponent, b: &Exponent| -> i128 {
            let (a, b) = ((a - &o), (b - &o));
            (a.doubled()[0] as i128) * (b.doubled()[1] as i128)
                - (a.doubled()[1] as i128) * (b.doubled()[0] as i128)
        };
        // The first vertex is extreme, so every other vertex lies in a
        // half-plane around it and the cross product is a strict order.
        rest.sort_by(|a, b| 0.cmp(&cross(a, b)));
        Ok(v)
    }
}

/// Newton polytope: the support of a nonzero polynomial.
pub fn newton(p: &MultivariateLaurent) -> Result<LatticePolytope, PolytopeError> {
    if p.is_zero() {
        return Err(PolytopeError::ZeroPolynomial);
    }
    LatticePolytope::from_points(p.nvars(), p.support())
}

/// The cube `[-r, r]^dim` as its `2^dim` corners.
pub fn hypercube(dim: usize, r: Half) -> LatticePolytope {
    let d = r.doubled().abs();
    let points = (0..(1usize << dim)).map(|mask| {
        Exponent::from_doubled(
            (0..dim)
                .map(|i| if mask >> i & 1 == 1 { d } else { -d })
                .collect(),
        )
    });
    LatticePolytope::from_points(dim, points).expect("consistent dimension")
}
