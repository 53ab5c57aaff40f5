//! Multi-pointed Heegaard diagrams as combinatorial data.
//!
//! A diagram is given by its attaching curves (cyclic lists of the
//! intersection points they pass through), the cyclic order of edge-ends
//! at each intersection point, and the regions of the complement with
//! their Euler characteristics and basepoints.
//!
//! Edges are implied by the curves and numbered from 1: first the edges
//! of `alpha[0]` (visit `i` to visit `i+1`, cyclically), then the other
//! alpha curves, then the beta curves. A signed edge id `+k` in a region
//! boundary means the region lies to the left of edge `k`, `-k` that it
//! lies to the right. At a vertex, `+k` is an edge leaving the vertex and
//! `-k` one arriving; the four ends are listed counterclockwise.
//!
//! For `phi` in `pi_2(x, y)` the alpha part of the boundary runs from `x` to
//! `y` and the beta part from `y` to `x`; Alexander gradings satisfy
//! `A(x) - A(y) = n_z(phi) - n_w(phi)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::laurent::{Exponent, LaurentError, MultivariateLaurent};
use crate::linalg;
use crate::norms::GradedRanks;

/// Default coefficient bound for admissibility and positivity searches.
pub const DEFAULT_SEARCH_BOUND: i64 = 6;

/// Searches never visit more than this many coefficient vectors; the
/// bound is lowered to fit and the lowered value is reported.
pub const MAX_SEARCH_POINTS: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HeegaardError {
    #[error("{kind} has {got} curves, expected genus + components - 1 = {expected}")]
    CurveCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{kind} curve {index} passes through no vertex")]
    EmptyCurve { kind: &'static str, index: usize },
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("vertex {vertex} is visited {alpha} times by alpha curves and {beta} times by beta curves")]
    VertexVisits {
        vertex: usize,
        alpha: usize,
        beta: usize,
    },
    #[error("vertex {vertex}: edge-ends {given:?} should be a permutation of {expected:?}")]
    VertexEdges {
        vertex: usize,
        given: [i64; 4],
        expected: [i64; 4],
    },
    #[error("vertex {0}: alpha and beta edge-ends do not alternate")]
    NotAlternating(usize),
    #[error("vertex {vertex}: sign {given} disagrees with the cyclic order ({computed})")]
    SignMismatch {
        vertex: usize,
        given: i8,
        computed: i8,
    },
    #[error("edge id {0} does not exist")]
    UnknownEdge(i64),
    #[error("boundary mismatch: signed edge {edge} occurs {count} times in region boundaries")]
    BoundaryMismatch { edge: i64, count: usize },
    #[error("vertex {vertex}: corner {corner} lies in regions {left} and {right}")]
    CornerMismatch {
        vertex: usize,
        corner: usize,
        left: usize,
        right: usize,
    },
    #[error("Euler count V - E + sum chi = {got}, expected 2 - 2g = {expected}")]
    EulerCount { expected: i64, got: i64 },
    #[error("basepoint {name} occurs in {count} regions")]
    Basepoint { name: String, count: usize },
    #[error("basepoint {0} is not named by any component")]
    UnknownBasepoint(String),
    #[error("no components")]
    NoComponents,
    #[error("kernel element changes n_z - n_w on component {0}; the diagram is not a link in S^3")]
    GradingInconsistent(usize),
    #[error("generators {x} and {y} are not connected by any domain")]
    Infeasible { x: usize, y: usize },
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("Maslov index is not an integer (4 mu = {0})")]
    NonIntegralMaslov(i64),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// One intersection point: its four edge-ends counterclockwise and an
/// optional intersection sign to cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub edges: [i64; 4],
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSpec {
    pub boundary: Vec<i64>,
    pub chi: i64,
    pub basepoints: Vec<String>,
}

/// Raw diagram data, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub genus: usize,
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<Vec<usize>>,
    pub vertices: Vec<VertexSpec>,
    pub regions: Vec<RegionSpec>,
    /// `(w_i, z_i)` for each link component.
    pub components: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    Alpha(usize),
    Beta(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub curve: Curve,
    pub from: usize,
    pub to: usize,
}

/// A point of `T_alpha ∩ T_beta`: one vertex on each alpha curve, using
/// every beta curve once.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Generator {
    /// `vertices[i]` lies on `alpha[i]`.
    pub vertices: Vec<usize>,
    pub sign: i8,
}

/// An integer 2-chain: one multiplicity per region.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DomainClass {
    pub mult: Vec<i64>,
}

impl DomainClass {
    pub fn zero(regions: usize) -> Self {
        DomainClass {
            mult: vec![0; regions],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|m| *m == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mult.iter().all(|m| *m >= 0)
    }

    fn add_scaled(&mut self, other: &[i64], k: i64) {
        for (a, b) in self.mult.iter_mut().zip(other) {
            *a += k * b;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    /// No nonzero periodic domain has all multiplicities of one sign.
    /// Exact when the periodic domains have rank at most one.
    Admissible,
    /// A nonzero periodic domain with multiplicities of one sign.
    NotAdmissible(DomainClass),
    /// None found with coefficients up to `bound` in the periodic basis.
    NoWitnessWithinBound { bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegativeSearch {
    Found(DomainClass),
    /// No domain connects the two generators with zero multiplicity at
    /// the basepoints.
    NoBasepointFreeClass,
    /// Every candidate was checked: no periodic domains to add.
    Exhausted,
    /// Not found with coefficients up to `bound`; not a proof.
    NoneWithinBound { bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub gradings: Vec<Exponent>,
    /// False when the Euler map vanishes and gradings are relative to the
    /// first generator.
    pub pinned: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub generators: usize,
    pub periodic_domains: Vec<DomainClass>,
    pub admissibility: Admissibility,
}

/// A validated diagram.
#[derive(Clone, Debug)]
pub struct PointedHeegaardDiagram {
    spec: DiagramSpec,
    edges: Vec<Edge>,
    left: Vec<usize>,
    right: Vec<usize>,
    on_beta: Vec<usize>,
    signs: Vec<i8>,
    corners: Vec<[usize; 4]>,
    w_region: Vec<usize>,
    z_region: Vec<usize>,
}

fn curve_edges(curves: &[Vec<usize>], make: fn(usize) -> Curve) -> Vec<Edge> {
    let mut out = Vec::new();
    for (c, visits) in curves.iter().enumerate() {
        for i in 0..visits.len() {
            out.push(Edge {
                curve: make(c),
                from: visits[i],
                to: visits[(i + 1) % visits.len()],
            });
        }
    }
    out
}

impl PointedHeegaardDiagram {
    pub fn new(spec: DiagramSpec) -> Result<Self, HeegaardError> {
        let l = spec.components.len();
        if l == 0 {
            return Err(HeegaardError::NoComponents);
        }
        let n = spec.genus + l - 1;
        for (kind, curves) in [("alpha", &spec.alpha), ("beta", &spec.beta)] {
            if curves.len() != n {
                return Err(HeegaardError::CurveCount {
                    kind,
                    expected: n,
                    got: curves.len(),
                });
            }
            if let Some(index) = curves.iter().position(|c| c.is_empty()) {
                return Err(HeegaardError::EmptyCurve { kind, index });
            }
        }
        let nv = spec.vertices.len();
        // (curve, position) of each vertex on its alpha and beta curve.
        let mut alpha_pos = vec![Vec::new(); nv];
        let mut beta_pos = vec![Vec::new(); nv];
        for (pos_table, curves) in [(&mut alpha_pos, &spec.alpha), (&mut beta_pos, &spec.beta)] {
            for (c, visits) in curves.iter().enumerate() {
                for (i, &v) in visits.iter().enumerate() {
                    if v >= nv {
                        return Err(HeegaardError::UnknownVertex(v));
                    }
                    pos_table[v].push((c, i));
                }
            }
        }
        for v in 0..nv {
            if alpha_pos[v].len() != 1 || beta_pos[v].len() != 1 {
                return Err(HeegaardError::VertexVisits {
                    vertex: v,
                    alpha: alpha_pos[v].len(),
                    beta: beta_pos[v].len(),
                });
            }
        }
        let mut edges = curve_edges(&spec.alpha, Curve::Alpha);
        let alpha_edges = edges.len();
        edges.extend(curve_edges(&spec.beta, Curve::Beta));
        // Edge id of visit i on curve c.
        let offsets = |curves: &[Vec<usize>], base: usize| -> Vec<usize> {
            let mut o = Vec::with_capacity(curves.len());
            let mut acc = base;
            for c in curves {
                o.push(acc);
                acc += c.len();
            }
            o
        };
        let a_off = offsets(&spec.alpha, 1);
        let b_off = offsets(&spec.beta, alpha_edges + 1);
        let edge_id = |off: &[usize], curves: &[Vec<usize>], c: usize, i: usize| -> i64 {
            (off[c] + (i % curves[c].len())) as i64
        };

        // Regions: each signed edge exactly once.
        let ne = edges.len();
        let mut left = vec![usize::MAX; ne];
        let mut right = vec![usize::MAX; ne];
        let mut count: BTreeMap<i64, usize> = BTreeMap::new();
        for (r, region) in spec.regions.iter().enumerate() {
            for &e in &region.boundary {
                let k = e.unsigned_abs() as usize;
                if e == 0 || k > ne {
                    return Err(HeegaardError::UnknownEdge(e));
                }
                *count.entry(e).or_insert(0) += 1;
                if e > 0 {
                    left[k - 1] = r;
                } else {
                    right[k - 1] = r;
                }
            }
        }
        for k in 1..=ne as i64 {
            for e in [k, -k] {
                let c = count.get(&e).copied().unwrap_or(0);
                if c != 1 {
                    return Err(HeegaardError::BoundaryMismatch { edge: e, count: c });
                }
            }
        }

        // Vertices: edge-ends, alternation, signs and corners.
        let mut signs = Vec::with_capacity(nv);
        let mut corners = Vec::with_capacity(nv);
        for (v, vs) in spec.vertices.iter().enumerate() {
            let (ac, ai) = alpha_pos[v][0];
            let (bc, bi) = beta_pos[v][0];
            let la = spec.alpha[ac].len();
            let lb = spec.beta[bc].len();
            let a_out = edge_id(&a_off, &spec.alpha, ac, ai);
            let a_in = edge_id(&a_off, &spec.alpha, ac, ai + la - 1);
            let b_out = edge_id(&b_off, &spec.beta, bc, bi);
            let b_in = edge_id(&b_off, &spec.beta, bc, bi + lb - 1);
            let expected = [a_out, -a_in, b_out, -b_in];
            let mut given = vs.edges;
            given.sort();
            let mut exp_sorted = expected;
            exp_sorted.sort();
            if given != exp_sorted {
                return Err(HeegaardError::VertexEdges {
                    vertex: v,
                    given: vs.edges,
                    expected,
                });
            }
            let is_alpha = |e: i64| e == a_out || e == -a_in;
            if (0..4).any(|j| is_alpha(vs.edges[j]) == is_alpha(vs.edges[(j + 1) % 4])) {
                return Err(HeegaardError::NotAlternating(v));
            }
            let j = vs.edges.iter().position(|&e| e == a_out).expect("present");
            let computed = if vs.edges[(j + 1) % 4] == b_out { 1 } else { -1 };
            if let Some(given) = vs.sign {
                if given != computed {
                    return Err(HeegaardError::SignMismatch {
                        vertex: v,
                        given,
                        computed,
                    });
                }
            }
            signs.push(computed);
            let mut c = [0usize; 4];
            for (j, slot) in c.iter_mut().enumerate() {
                let ea = vs.edges[j];
                let eb = vs.edges[(j + 1) % 4];
                let ka = ea.unsigned_abs() as usize - 1;
                let kb = eb.unsigned_abs() as usize - 1;
                let ra = if ea > 0 { left[ka] } else { right[ka] };
                let rb = if eb > 0 { right[kb] } else { left[kb] };
                if ra != rb {
                    return Err(HeegaardError::CornerMismatch {
                        vertex: v,
                        corner: j,
                        left: ra,
                        right: rb,
                    });
                }
                *slot = ra;
            }
            corners.push(c);
        }

        let euler = nv as i64 - ne as i64 + spec.regions.iter().map(|r| r.chi).sum::<i64>();
        let expected = 2 - 2 * spec.genus as i64;
        if euler != expected {
            return Err(HeegaardError::EulerCount {
                expected,
                got: euler,
            });
        }

        let mut names: BTreeSet<&str> = BTreeSet::new();
        for (w, z) in &spec.components {
            names.insert(w);
            names.insert(z);
        }
        let mut where_is: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (r, region) in spec.regions.iter().enumerate() {
            for b in &region.basepoints {
                if !names.contains(b.as_str()) {
                    return Err(HeegaardError::UnknownBasepoint(b.clone()));
                }
                where_is.entry(b).or_default().push(r);
            }
        }
        let locate = |name: &str| -> Result<usize, HeegaardError> {
            match where_is.get(name).map(Vec::as_slice) {
                Some([r]) => Ok(*r),
                other => Err(HeegaardError::Basepoint {
                    name: name.into(),
                    count: other.map_or(0, <[usize]>::len),
                }),
            }
        };
        let mut w_region = Vec::with_capacity(l);
        let mut z_region = Vec::with_capacity(l);
        for (w, z) in &spec.components {
            if w == z {
                return Err(HeegaardError::Basepoint {
                    name: w.clone(),
                    count: 2,
                });
            }
            w_region.push(locate(w)?);
            z_region.push(locate(z)?);
        }

        let d = PointedHeegaardDiagram {
            on_beta: beta_pos.iter().map(|p| p[0].0).collect(),
            spec,
            edges,
            left,
            right,
            signs,
            corners,
            w_region,
            z_region,
        };
        d.check_grading_consistency()?;
        Ok(d)
    }

    pub fn spec(&self) -> &DiagramSpec {
        &self.spec
    }

    pub fn genus(&self) -> usize {
        self.spec.genus
    }

    pub fn component_count(&self) -> usize {
        self.spec.components.len()
    }

    pub fn region_count(&self) -> usize {
        self.spec.regions.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Intersection sign of each vertex.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Regions meeting each vertex, counterclockwise.
    pub fn corners(&self) -> &[[usize; 4]] {
        &self.corners
    }

    fn curve_count(&self) -> usize {
        self.spec.alpha.len()
    }

    /// All generators, ordered lexicographically by vertex list.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.curve_count();
        let mut per_alpha: Vec<Vec<usize>> = self.spec.alpha.clone();
        for v in &mut per_alpha {
            v.sort();
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.extend_generators(&per_alpha, &mut chosen, &mut used, &mut out);
        out
    }

    fn extend_generators(
        &self,
        per_alpha: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Generator>,
    ) {
        let i = chosen.len();
        if i == per_alpha.len() {
            let perm: Vec<usize> = chosen.iter().map(|&v| self.on_beta[v]).collect();
            let mut sign = permutation_sign(&perm);
            for &v in chosen.iter() {
                sign *= self.signs[v];
            }
            out.push(Generator {
                vertices: chosen.clone(),
                sign,
            });
            return;
        }
        for &v in &per_alpha[i] {
            let b = self.on_beta[v];
            if !used[b] {
                used[b] = true;
                chosen.push(v);
                self.extend_generators(per_alpha, chosen, used, out);
                chosen.pop();
                used[b] = false;
            }
        }
    }

    /// Coefficient rows of the boundary conditions: one row per curve visit.
    fn boundary_rows(&self) -> Vec<Vec<i64>> {
        let nr = self.region_count();
        let edge_vec = |k: usize| -> Vec<i64> {
            let mut row = vec![0i64; nr];
            row[self.left[k]] += 1;
            row[self.right[k]] -= 1;
            row
        };
        let mut rows = Vec::new();
        let mut base = 0;
        for curves in [&self.spec.alpha, &self.spec.beta] {
            for visits in curves.iter() {
                let len = visits.len();
                for i in 0..len {
                    let prev = edge_vec(base + (i + len - 1) % len);
                    let next = edge_vec(base + i);
                    rows.push(prev.iter().zip(&next).map(|(a, b)| a - b).collect());
                }
                base += len;
            }
        }
        rows
    }

    fn boundary_rhs(&self, x: &Generator, y: &Generator) -> Vec<i64> {
        let xs: BTreeSet<usize> = x.vertices.iter().copied().collect();
        let ys: BTreeSet<usize> = y.vertices.iter().copied().collect();
        let jump = |v: usize| ys.contains(&v) as i64 - xs.contains(&v) as i64;
        let mut rhs = Vec::new();
        for visits in &self.spec.alpha {
            rhs.extend(visits.iter().map(|&v| jump(v)));
        }
        for visits in &self.spec.beta {
            rhs.extend(visits.iter().map(|&v| -jump(v)));
        }
        rhs
    }

    fn basepoint_rows(&self) -> Vec<Vec<i64>> {
        let nr = self.region_count();
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.extend(self.w_region.iter().copied());
        set.extend(self.z_region.iter().copied());
        set.into_iter()
            .map(|r| {
                let mut row = vec![0i64; nr];
                row[r] = 1;
                row
            })
            .collect()
    }

    /// Some `phi` in `pi_2(x, y)`, or `None` if there is none. Adding the
    /// whole surface shifts every multiplicity, so the class returned has
    /// `n_{w_1} = 0`.
    pub fn domain_between(&self, x: &Generator, y: &Generator) -> Option<DomainClass> {
        let mut rows = self.boundary_rows();
        let mut rhs = self.boundary_rhs(x, y);
        let mut w = vec![0i64; self.region_count()];
        w[self.w_region[0]] = 1;
        rows.push(w);
        rhs.push(0);
        linalg::solve_integer(&rows, &rhs, self.region_count()).map(|mult| DomainClass { mult })
    }

    /// Lattice basis of domains whose boundary is a sum of whole curves.
    pub fn closed_domains(&self) -> Vec<DomainClass> {
        linalg::integer_kernel(&self.boundary_rows(), self.region_count())
            .into_iter()
            .map(|mult| DomainClass { mult })
            .collect()
    }

    /// Lattice basis of periodic domains: closed domains avoiding every
    /// basepoint.
    pub fn periodic_domains(&self) -> Vec<DomainClass> {
        let mut rows = self.boundary_rows();
        rows.extend(self.basepoint_rows());
        linalg::integer_kernel(&rows, self.region_count())
            .into_iter()
            .map(|mult| DomainClass { mult })
            .collect()
    }

    pub fn n_w(&self, d: &DomainClass) -> Vec<i64> {
        self.w_region.iter().map(|&r| d.mult[r]).collect()
    }

    pub fn n_z(&self, d: &DomainClass) -> Vec<i64> {
        self.z_region.iter().map(|&r| d.mult[r]).collect()
    }

    /// `n_z - n_w` per component.
    pub fn grading_shift(&self, d: &DomainClass) -> Vec<i64> {
        self.n_z(d)
            .iter()
            .zip(self.n_w(d))
            .map(|(z, w)| z - w)
            .collect()
    }

    /// Closed domains must not change Alexander gradings.
    pub fn check_grading_consistency(&self) -> Result<(), HeegaardError> {
        for k in self.closed_domains() {
            if let Some(c) = self.grading_shift(&k).iter().position(|s| *s != 0) {
                return Err(HeegaardError::GradingInconsistent(c));
            }
        }
        Ok(())
    }

    pub fn admissibility(&self, bound: i64) -> Admissibility {
        let basis = self.periodic_domains();
        match basis.len() {
            0 => Admissibility::Admissible,
            1 => {
                let p = &basis[0];
                if p.mult.iter().all(|m| *m >= 0) || p.mult.iter().all(|m| *m <= 0) {
                    Admissibility::NotAdmissible(p.clone())
                } else {
                    Admissibility::Admissible
                }
            }
            k => {
                let bound = fit_bound(bound, k);
                let mut witness = None;
                for_each_combination(k, bound, &mut |c| {
                    if c.iter().all(|v| *v == 0) {
                        return true;
                    }
                    let mut d = DomainClass::zero(self.region_count());
                    for (ci, p) in c.iter().zip(&basis) {
                        d.add_scaled(&p.mult, *ci);
                    }
                    if d.is_zero() {
                        return true;
                    }
                    // Only one sign of each pair needs checking.
                    if d.is_nonnegative() {
                        witness = Some(d);
                        return false;
                    }
                    true
                });
                match witness {
                    Some(d) => Admissibility::NotAdmissible(d),
                    None => Admissibility::NoWitnessWithinBound { bound },
                }
            }
        }
    }

    /// Generators, periodic domains and admissibility.
    pub fn validate(&self, bound: i64) -> ValidationReport {
        ValidationReport {
            generators: self.generators().len(),
            periodic_domains: self.periodic_domains(),
            admissibility: self.admissibility(bound),
        }
    }

    /// Alexander multi-gradings of `generators()`, centred so that the Euler
    /// map is symmetric about the origin.
    pub fn h_gradings(&self) -> Result<GradingReport, HeegaardError> {
        let gens = self.generators();
        let l = self.component_count();
        let Some(reference) = gens.first() else {
            return Ok(GradingReport {
                gradings: Vec::new(),
                pinned: false,
            });
        };
        let mut rel = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let phi = self
                .domain_between(g, reference)
                .ok_or(HeegaardError::Infeasible { x: i, y: 0 })?;
            let shift = self.grading_shift(&phi);
            rel.push(Exponent::from_doubled(shift.iter().map(|s| 2 * s).collect()));
        }
        let mut chi = MultivariateLaurent::zero(l);
        for (g, s) in gens.iter().zip(&rel) {
            chi = &chi + &MultivariateLaurent::monomial(s.clone(), g.sign as i64);
        }
        if chi.is_zero() {
            return Ok(GradingReport {
                gradings: rel,
                pinned: false,
            });
        }
        let centred = chi.center()?;
        let offset = centred
            .leading()
            .map(|(e, _)| e.clone())
            .zip(chi.leading().map(|(e, _)| e.clone()))
            .map(|(a, b)| &a - &b)
            .expect("nonzero");
        Ok(GradingReport {
            gradings: rel.iter().map(|s| s + &offset).collect(),
            pinned: true,
        })
    }

    /// Chain ranks and Euler characteristics per grading; the overall sign
    /// makes the lexicographically largest nonzero value positive.
    pub fn euler_characteristics(&self) -> Result<GradedRanks, HeegaardError> {
        let gens = self.generators();
        let gr = self.h_gradings()?;
        let mut out = GradedRanks::default();
        for (g, s) in gens.iter().zip(&gr.gradings) {
            *out.ranks.entry(s.clone()).or_insert(0) += 1;
            *out.euler.entry(s.clone()).or_insert(0) += g.sign as i64;
        }
        let flip = out
            .euler
            .values()
            .rev()
            .find(|v| **v != 0)
            .is_some_and(|v| *v < 0);
        if flip {
            for v in out.euler.values_mut() {
                *v = -*v;
            }
        }
        Ok(out)
    }

    /// The Euler map as a Laurent polynomial.
    pub fn euler_polynomial(&self) -> Result<MultivariateLaurent, HeegaardError> {
        let r = self.euler_characteristics()?;
        Ok(MultivariateLaurent::from_terms(self.component_count(), r.euler)?)
    }

    /// Looks for `phi` in `pi_2(x, y)` with nonnegative multiplicities and no
    /// basepoints, among `D_0 + sum c_k P_k` with `|c_k| <= bound`.
    pub fn nonnegative_class_exists(&self, x: &Generator, y: &Generator, bound: i64) -> NonnegativeSearch {
        let mut rows = self.boundary_rows();
        let mut rhs = self.boundary_rhs(x, y);
        let bp = self.basepoint_rows();
        rhs.extend(core::iter::repeat_n(0, bp.len()));
        rows.extend(bp);
        let Some(d0) = linalg::solve_integer(&rows, &rhs, self.region_count()) else {
            return NonnegativeSearch::NoBasepointFreeClass;
        };
        let d0 = DomainClass { mult: d0 };
        let basis = self.periodic_domains();
        if basis.is_empty() {
            return if d0.is_nonnegative() {
                NonnegativeSearch::Found(d0)
            } else {
                NonnegativeSearch::Exhausted
            };
        }
        let bound = fit_bound(bound, basis.len());
        let mut found = None;
        for_each_combination(basis.len(), bound, &mut |c| {
            let mut d = d0.clone();
            for (ci, p) in c.iter().zip(&basis) {
                d.add_scaled(&p.mult, *ci);
            }
            if d.is_nonnegative() {
                found = Some(d);
                return false;
            }
            true
        });
        match found {
            Some(d) => NonnegativeSearch::Found(d),
            None => NonnegativeSearch::NoneWithinBound { bound },
        }
    }

    /// `4 n_x(D)`: sum over the vertices of `x` of the multiplicities at
    /// their four corners.
    fn corner_sum(&self, d: &DomainClass, x: &Generator) -> i64 {
        x.vertices
            .iter()
            .map(|&v| self.corners[v].iter().map(|&r| d.mult[r]).sum::<i64>())
            .sum()
    }

    /// Maslov index `e(D) + n_x(D) + n_y(D)` with `e(R) = chi(R) - corners/4`.
    pub fn maslov_index(&self, d: &DomainClass, x: &Generator, y: &Generator) -> Result<i64, HeegaardError> {
        let mut corner_count = vec![0i64; self.region_count()];
        for c in &self.corners {
            for &r in c {
                corner_count[r] += 1;
            }
        }
        let euler4: i64 = self
            .spec
            .regions
            .iter()
            .enumerate()
            .map(|(r, reg)| d.mult[r] * (4 * reg.chi - corner_count[r]))
            .sum();
        let mu4 = euler4 + self.corner_sum(d, x) + self.corner_sum(d, y);
        if mu4 % 4 != 0 {
            return Err(HeegaardError::NonIntegralMaslov(mu4));
        }
        Ok(mu4 / 4)
    }

    /// `gr(x) - gr(y) = mu(phi) - 2 sum n_w(phi)`.
    pub fn maslov_relative(&self, x: &Generator, y: &Generator) -> Result<i64, HeegaardError> {
        let phi = self.domain_between(x, y).ok_or(HeegaardError::Infeasible { x: 0, y: 1 })?;
        let mu = self.maslov_index(&phi, x, y)?;
        Ok(mu - 2 * self.n_w(&phi).iter().sum::<i64>())
    }
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Largest bound `<= bound` whose search box fits in `MAX_SEARCH_POINTS`.
fn fit_bound(bound: i64, k: usize) -> i64 {
    let mut b = bound.max(0);
    while b > 0 {
        let side = (2 * b + 1) as u64;
        let fits = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(side).filter(|v| *v <= MAX_SEARCH_POINTS));
        if fits.is_some() {
            break;
        }
        b -= 1;
    }
    b
}

/// Visits every vector in `[-bound, bound]^k`, smallest sup-norm first,
/// until `f` returns false.
fn for_each_combination<F: FnMut(&[i64]) -> bool>(k: usize, bound: i64, f: &mut F) {
    for radius in 0..=bound {
        let mut c = vec![-radius; k];
        loop {
            if c.iter().any(|v| v.abs() == radius) && !f(&c) {
                return;
            }
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                if c[i] < radius {
                    c[i] += 1;
                    break;
                }
                c[i] = -radius;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn region(boundary: &[i64], chi: i64, bp: &[&str]) -> RegionSpec {
        RegionSpec {
            boundary: boundary.to_vec(),
            chi,
            basepoints: bp.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn vertex(edges: [i64; 4], sign: i8) -> VertexSpec {
        VertexSpec {
            edges,
            sign: Some(sign),
        }
    }

    fn knot(w: &str, z: &str) -> Vec<(String, String)> {
        vec![(w.to_string(), z.to_string())]
    }

    fn unknot() -> DiagramSpec {
        DiagramSpec {
            genus: 1,
            alpha: vec![vec![0]],
            beta: vec![vec![0]],
            vertices: vec![vertex([1, 2, -1, -2], 1)],
            regions: vec![region(&[1, -1, 2, -2], 1, &["w", "z"])],
            components: knot("w", "z"),
        }
    }

    /// Torus with a finger move; vertices p, q1, q2 in order along alpha,
    /// visited p, q2, q1 by beta. Regions: G (pocket below alpha),
    /// F (finger tip above alpha), R (the rest).
    fn finger(g: &[&str], f: &[&str], r: &[&str]) -> DiagramSpec {
        DiagramSpec {
            genus: 1,
            alpha: vec![vec![0, 1, 2]],
            beta: vec![vec![0, 2, 1]],
            vertices: vec![
                vertex([1, 4, -3, -6], 1),
                vertex([2, -5, -1, 6], -1),
                vertex([3, 5, -2, -4], 1),
            ],
            regions: vec![
                region(&[-1, -6], 1, g),
                region(&[2, 5], 1, f),
                region(&[1, -2, 3, -3, 4, -4, -5, 6], 1, r),
            ],
            components: knot("w", "z"),
        }
    }

    fn trefoil() -> DiagramSpec {
        finger(&["w"], &["z"], &[])
    }

    fn hopf() -> DiagramSpec {
        // Sphere; alpha a circle, beta a wide flat ellipse, both
        // counterclockwise. Vertices NE, NW, SW, SE. Regions C, T, Bo, L, R, O.
        DiagramSpec {
            genus: 0,
            alpha: vec![vec![0, 1, 2, 3]],
            beta: vec![vec![0, 1, 2, 3]],
            vertices: vec![
                vertex([1, 5, -4, -8], 1),
                vertex([2, -5, -1, 6], -1),
                vertex([3, 7, -2, -6], 1),
                vertex([4, -7, -3, 8], -1),
            ],
            regions: vec![
                region(&[5, 2, 7, 4], 1, &[]),
                region(&[1, -5], 1, &["w1"]),
                region(&[3, -7], 1, &["z1"]),
                region(&[6, -2], 1, &["w2"]),
                region(&[8, -4], 1, &["z2"]),
                region(&[-1, -6, -3, -8], 1, &[]),
            ],
            components: vec![
                ("w1".to_string(), "z1".to_string()),
                ("w2".to_string(), "z2".to_string()),
            ],
        }
    }

    fn ex(c: &[i64]) -> Exponent {
        Exponent::from_doubled(c.to_vec())
    }

    #[test]
    fn unknot_diagram() {
        let d = PointedHeegaardDiagram::new(unknot()).unwrap();
        let rep = d.validate(DEFAULT_SEARCH_BOUND);
        assert_eq!(rep.generators, 1);
        assert!(rep.periodic_domains.is_empty());
        assert_eq!(rep.admissibility, Admissibility::Admissible);
        let gr = d.h_gradings().unwrap();
        assert_eq!(gr.gradings, vec![ex(&[0])]);
        let e = d.euler_characteristics().unwrap();
        assert_eq!(e.euler.into_iter().collect::<Vec<_>>(), vec![(ex(&[0]), 1)]);
    }

    #[test]
    fn trefoil_diagram() {
        let d = PointedHeegaardDiagram::new(trefoil()).unwrap();
        let gens = d.generators();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens.iter().map(|g| g.sign).collect::<Vec<_>>(), vec![1, -1, 1]);
        assert_eq!(d.admissibility(DEFAULT_SEARCH_BOUND), Admissibility::Admissible);
        let gr = d.h_gradings().unwrap();
        assert!(gr.pinned);
        assert_eq!(gr.gradings, vec![ex(&[2]), ex(&[0]), ex(&[-2])]);
        let e = d.euler_polynomial().unwrap();
        let t = MultivariateLaurent::variable(1, 0);
        let expected = &(&t - &MultivariateLaurent::one(1)) + &MultivariateLaurent::monomial(ex(&[-2]), 1);
        assert_eq!(e, expected);
    }

    #[test]
    fn trefoil_bigons() {
        let d = PointedHeegaardDiagram::new(trefoil()).unwrap();
        let g = d.generators();
        // F connects q1 to q2 and carries z.
        let f = d.domain_between(&g[1], &g[2]).unwrap();
        assert_eq!(f.mult, vec![0, 1, 0]);
        assert_eq!(d.grading_shift(&f), vec![1]);
        assert_eq!(d.domain_between(&g[0], &g[0]).unwrap(), DomainClass::zero(3));
        assert_eq!(d.maslov_index(&f, &g[1], &g[2]).unwrap(), 1);
        // Both bigons carry a basepoint.
        assert_eq!(
            d.nonnegative_class_exists(&g[1], &g[2], 6),
            NonnegativeSearch::NoBasepointFreeClass
        );
    }

    #[test]
    fn free_bigons() {
        let d = PointedHeegaardDiagram::new(finger(&[], &[], &["w", "z"])).unwrap();
        let g = d.generators();
        assert_eq!(
            d.nonnegative_class_exists(&g[1], &g[2], 6),
            NonnegativeSearch::Found(DomainClass { mult: vec![0, 1, 0] })
        );
        assert_eq!(
            d.nonnegative_class_exists(&g[2], &g[1], 6),
            NonnegativeSearch::Exhausted
        );
        assert_eq!(
            d.nonnegative_class_exists(&g[0], &g[0], 6),
            NonnegativeSearch::Found(DomainClass::zero(3))
        );
        assert_eq!(d.maslov_relative(&g[1], &g[2]).unwrap(), 1);
        assert_eq!(d.maslov_relative(&g[1], &g[0]).unwrap(), 1);
        let e = d.euler_polynomial().unwrap();
        assert_eq!(e, MultivariateLaurent::one(1));
    }

    #[test]
    fn hopf_diagram() {
        let d = PointedHeegaardDiagram::new(hopf()).unwrap();
        let g = d.generators();
        assert_eq!(g.len(), 4);
        let p = d.periodic_domains();
        assert_eq!(p.len(), 1);
        assert_eq!(d.closed_domains().len(), 3);
        assert_eq!(d.admissibility(6), Admissibility::Admissible);
        let gr = d.h_gradings().unwrap();
        assert_eq!(gr.gradings, vec![ex(&[-1, 1]), ex(&[1, 1]), ex(&[1, -1]), ex(&[-1, -1])]);
        let e = d.euler_polynomial().unwrap();
        let f = crate::laurent::euler_factor(2).unwrap();
        assert!(e == f || e == -&f);
        // The top lune runs from NE to NW and carries w1; the class found
        // by the solver differs from it by a closed domain.
        let t = DomainClass { mult: vec![0, 1, 0, 0, 0, 0] };
        assert_eq!(d.maslov_index(&t, &g[0], &g[1]).unwrap(), 1);
        let found = d.domain_between(&g[0], &g[1]).unwrap();
        assert_eq!(d.grading_shift(&found), d.grading_shift(&t));
        assert_eq!(d.maslov_relative(&g[0], &g[1]).unwrap(), -1);
    }

    #[test]
    fn mod_two_gradings_match_signs() {
        for spec in [unknot(), trefoil(), hopf(), finger(&[], &[], &["w", "z"])] {
            let d = PointedHeegaardDiagram::new(spec).unwrap();
            let g = d.generators();
            for x in &g {
                for y in &g {
                    let m = d.maslov_relative(x, y).unwrap();
                    assert_eq!(m.rem_euclid(2) == 0, x.sign == y.sign);
                }
            }
        }
    }

    #[test]
    fn gradings_are_additive() {
        let d = PointedHeegaardDiagram::new(hopf()).unwrap();
        let g = d.generators();
        let shift = |a: usize, b: usize| d.grading_shift(&d.domain_between(&g[a], &g[b]).unwrap());
        for a in 0..4 {
            for b in 0..4 {
                let ab = shift(a, b);
                let ba = shift(b, a);
                assert!(ab.iter().zip(&ba).all(|(p, q)| p + q == 0));
                for c in 0..4 {
                    let ac = shift(a, c);
                    let bc = shift(b, c);
                    assert!((0..2).all(|i| ac[i] == ab[i] + bc[i]));
                }
            }
        }
    }

    #[test]
    fn structural_errors() {
        let mut s = unknot();
        s.regions[0].boundary.pop();
        assert_eq!(
            PointedHeegaardDiagram::new(s).unwrap_err(),
            HeegaardError::BoundaryMismatch { edge: -2, count: 0 }
        );
        let mut s = unknot();
        s.vertices[0].sign = Some(-1);
        assert!(matches!(
            PointedHeegaardDiagram::new(s),
            Err(HeegaardError::SignMismatch { .. })
        ));
        let mut s = unknot();
        s.vertices[0].edges = [1, -1, 2, -2];
        assert_eq!(PointedHeegaardDiagram::new(s).unwrap_err(), HeegaardError::NotAlternating(0));
        let mut s = unknot();
        s.regions[0].chi = 0;
        assert!(matches!(
            PointedHeegaardDiagram::new(s),
            Err(HeegaardError::EulerCount { .. })
        ));
        let mut s = unknot();
        s.regions[0].basepoints.pop();
        assert!(matches!(
            PointedHeegaardDiagram::new(s),
            Err(HeegaardError::Basepoint { .. })
        ));
        let mut s = trefoil();
        s.vertices[0] = VertexSpec {
            edges: [1, -6, -3, 4],
            sign: None,
        };
        assert!(matches!(
            PointedHeegaardDiagram::new(s),
            Err(HeegaardError::CornerMismatch { .. })
        ));
        let mut s = unknot();
        s.alpha.push(vec![0]);
        assert!(matches!(
            PointedHeegaardDiagram::new(s),
            Err(HeegaardError::CurveCount { .. })
        ));
    }

    #[test]
    fn no_generators() {
        // Two alpha and two beta curves on a sphere-like count where the
        // matching is impossible: alpha_1 only meets beta_1 and alpha_2 only
        // meets beta_1 too. Validation fails before generators matter, so
        // check the enumeration directly on a permutation test instead.
        assert_eq!(permutation_sign(&[1, 0]), -1);
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }

    #[test]
    fn search_boxes() {
        let mut seen = Vec::new();
        for_each_combination(2, 1, &mut |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[0], vec![0, 0]);
        assert_eq!(fit_bound(6, 1), 6);
        assert!(fit_bound(6, 12) < 6);
    }
}
