//! Oriented link diagrams given by planar-diagram (PD) codes.
//!
//! A PD code lists one 4-tuple of edge labels per crossing, counterclockwise
//! starting from the incoming under-strand; positions 0 and 2 are the
//! under-strand (in, out) and positions 1 and 3 the over-strand. Each edge
//! label occurs exactly twice. Orientations of under-strands are read off
//! directly and propagated along each component; a component that never
//! passes under anything is oriented so that the edge after its smallest
//! label is the smaller of that label's two neighbours.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("PD code is not a list of integer lists: {0}")]
    Syntax(String),
    #[error("crossing {index} has {len} entries, expected 4")]
    Arity { index: usize, len: usize },
    #[error("crossing {index} has non-positive label {label}")]
    NonPositiveLabel { index: usize, label: i64 },
    #[error("arc label {label} appears {count} times, expected exactly 2")]
    LabelCount { label: i64, count: usize },
    #[error("component through arc {label} is traversed inconsistently by its under-strands")]
    InconsistentOrientation { label: i64 },
}

/// One crossing with its resolved strand directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Labels in PD order.
    pub labels: [i64; 4],
    pub under_in: i64,
    pub under_out: i64,
    pub over_in: i64,
    pub over_out: i64,
    /// +1 or -1.
    pub sign: i8,
    pub under_component: usize,
    pub over_component: usize,
}

/// A validated oriented link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    arcs: BTreeSet<i64>,
    /// Labels of each component in traversal order, starting at its
    /// smallest label. Components are sorted by smallest label.
    components: Vec<Vec<i64>>,
    component_of: BTreeMap<i64, usize>,
    /// For a zero-crossing diagram: the number of (unknotted) components.
    trivial_components: usize,
}

/// Pairings `<h, mu_i>` of a cohomology class with the meridians.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass(pub Vec<i64>);

impl CohomologyClass {
    pub fn new(pairings: Vec<i64>) -> Self {
        CohomologyClass(pairings)
    }

    pub fn pairings(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum_i |<h, mu_i>|`.
    pub fn meridian_sum(&self) -> i64 {
        self.0.iter().map(|v| v.abs()).sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        CohomologyClass(self.0.iter().map(|v| v * k).collect())
    }
}

/// Parses a PD code written as a JSON-style list of 4-element integer lists.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, PdError> {
    let raw: Vec<Vec<i64>> =
        serde_json::from_str(text).map_err(|e| PdError::Syntax(e.to_string()))?;
    LinkDiagram::from_tuples(&raw)
}

type Slot = (usize, usize);

impl LinkDiagram {
    /// The zero-crossing diagram of the unknot.
    pub fn unknot() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            arcs: BTreeSet::new(),
            components: Vec::new(),
            component_of: BTreeMap::new(),
            trivial_components: 1,
        }
    }

    pub fn from_tuples(raw: &[Vec<i64>]) -> Result<Self, PdError> {
        let mut tuples = Vec::with_capacity(raw.len());
        for (index, t) in raw.iter().enumerate() {
            if t.len() != 4 {
                return Err(PdError::Arity {
                    index,
                    len: t.len(),
                });
            }
            if let Some(&label) = t.iter().find(|&&l| l <= 0) {
                return Err(PdError::NonPositiveLabel { index, label });
            }
            tuples.push([t[0], t[1], t[2], t[3]]);
        }
        Self::from_crossings(&tuples)
    }

    pub fn from_crossings(tuples: &[[i64; 4]]) -> Result<Self, PdError> {
        if tuples.is_empty() {
            return Ok(Self::unknot());
        }
        let mut slots: BTreeMap<i64, Vec<Slot>> = BTreeMap::new();
        for (c, t) in tuples.iter().enumerate() {
            for (p, &l) in t.iter().enumerate() {
                if l <= 0 {
                    return Err(PdError::NonPositiveLabel { index: c, label: l });
                }
                slots.entry(l).or_default().push((c, p));
            }
        }
        for (&label, s) in &slots {
            if s.len() != 2 {
                return Err(PdError::LabelCount {
                    label,
                    count: s.len(),
                });
            }
        }
        let other_slot = |label: i64, s: Slot| -> Slot {
            let ss = &slots[&label];
            if ss[0] == s {
                ss[1]
            } else {
                ss[0]
            }
        };

        // (crossing, entry position, exit position) for each pass.
        let mut visited: BTreeSet<i64> = BTreeSet::new();
        let mut components: Vec<Vec<i64>> = Vec::new();
        let mut passes_by_component: Vec<Vec<(usize, usize, usize)>> = Vec::new();
        for &start in slots.keys() {
            if visited.contains(&start) {
                continue;
            }
            let mut labels = vec![start];
            let mut passes = Vec::new();
            let mut entry = slots[&start][1];
            loop {
                let (c, p) = entry;
                let q = (p + 2) % 4;
                passes.push((c, p, q));
                let next = tuples[c][q];
                if next == start && other_slot(next, (c, q)) == slots[&start][1] {
                    break;
                }
                labels.push(next);
                entry = other_slot(next, (c, q));
            }
            let forward = passes.iter().filter(|&&(_, p, q)| p == 0 && q == 2).count();
            let backward = passes.iter().filter(|&&(_, p, q)| p == 2 && q == 0).count();
            if forward > 0 && backward > 0 {
                return Err(PdError::InconsistentOrientation { label: start });
            }
            let reverse = if backward > 0 {
                true
            } else if forward > 0 || labels.len() < 2 {
                false
            } else {
                // Never under: successor of the smallest label should be
                // its smaller neighbour.
                let succ = labels[1];
                let pred = *labels.last().unwrap();
                pred < succ
            };
            if reverse {
                // Traversal order reversed: start label stays first.
                labels[1..].reverse();
                passes.reverse();
                for pass in &mut passes {
                    core::mem::swap(&mut pass.1, &mut pass.2);
                }
            }
            visited.extend(labels.iter().copied());
            components.push(labels);
            passes_by_component.push(passes);
        }

        let mut component_of = BTreeMap::new();
        for (i, comp) in components.iter().enumerate() {
            for &l in comp {
                component_of.insert(l, i);
            }
        }

        let mut crossings: Vec<Option<Crossing>> = vec![None; tuples.len()];
        let mut over: Vec<Option<(usize, usize, usize)>> = vec![None; tuples.len()];
        let mut under: Vec<Option<usize>> = vec![None; tuples.len()];
        for (ci, passes) in passes_by_component.iter().enumerate() {
            for &(c, p, q) in passes {
                if p % 2 == 0 {
                    under[c] = Some(ci);
                } else {
                    over[c] = Some((ci, p, q));
                }
            }
        }
        for (c, t) in tuples.iter().enumerate() {
            let under_component = under[c].expect("every under-strand is traversed");
            let (over_component, p, q) = over[c].expect("every over-strand is traversed");
            let sign = if p == 3 { 1 } else { -1 };
            crossings[c] = Some(Crossing {
                labels: *t,
                under_in: t[0],
                under_out: t[2],
                over_in: t[p],
                over_out: t[q],
                sign,
                under_component,
                over_component,
            });
        }

        Ok(LinkDiagram {
            crossings: crossings.into_iter().map(Option::unwrap).collect(),
            arcs: slots.keys().copied().collect(),
            components,
            component_of,
            trivial_components: 0,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arcs(&self) -> &BTreeSet<i64> {
        &self.arcs
    }

    /// Number of link components `l`.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.trivial_components
    }

    /// Edge labels of each component in traversal order.
    pub fn components(&self) -> &[Vec<i64>] {
        &self.components
    }

    pub fn component_of(&self, label: i64) -> Option<usize> {
        self.component_of.get(&label).copied()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// The PD tuples.
    pub fn pd(&self) -> Vec<[i64; 4]> {
        self.crossings.iter().map(|c| c.labels).collect()
    }

    /// Symmetric matrix of linking numbers with zero diagonal.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        let mut m = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let (i, j) = (c.under_component, c.over_component);
            if i != j {
                m[i][j] += c.sign as i64;
                m[j][i] += c.sign as i64;
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0, "odd inter-component crossing sum");
                *v /= 2;
            }
        }
        m
    }

    /// Over and under passes alternate along every component.
    pub fn is_alternating(&self) -> bool {
        // Each edge must leave one crossing on one level and arrive at the
        // next on the other, i.e. its two PD positions have opposite parity.
        let mut parity: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for c in &self.crossings {
            for (p, &l) in c.labels.iter().enumerate() {
                parity.entry(l).or_default().push(p % 2);
            }
        }
        parity.values().all(|v| v[0] != v[1])
    }

    /// The 4-valent crossing graph is connected.
    pub fn is_connected_projection(&self) -> bool {
        if self.trivial_components > 1 {
            return false;
        }
        let n = self.crossings.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut first_seen: BTreeMap<i64, usize> = BTreeMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for &l in &c.labels {
                if let Some(&cj) = first_seen.get(&l) {
                    let (a, b) = (find(&mut parent, ci), find(&mut parent, cj));
                    parent[a] = b;
                } else {
                    first_seen.insert(l, ci);
                }
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Same diagram with the orientation of component `i` reversed.
    pub fn reverse_component(&self, i: usize) -> Result<Self, PdError> {
        let tuples: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.labels;
                if c.under_component == i {
                    [t[2], t[3], t[0], t[1]]
                } else {
                    t
                }
            })
            .collect();
        let reversed = Self::from_crossings(&tuples)?;
        // Components with no under-strand take their orientation from the
        // label heuristic; make sure the reversal actually took effect.
        Ok(reversed)
    }

    /// Mirror image: every crossing changes from over to under.
    pub fn mirror(&self) -> Result<Self, PdError> {
        let tuples: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.labels;
                if c.over_in == t[1] && c.over_in != t[3] {
                    [t[1], t[2], t[3], t[0]]
                } else {
                    [t[3], t[0], t[1], t[2]]
                }
            })
            .collect();
        Self::from_crossings(&tuples)
    }

    /// Applies a bijective relabelling of the edges.
    pub fn relabel<F: Fn(i64) -> i64>(&self, f: F) -> Result<Self, PdError> {
        let tuples: Vec<[i64; 4]> = self
            .crossings
            .iter()
            .map(|c| c.labels.map(&f))
            .collect();
        Self::from_crossings(&tuples)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HOPF: &str = "[[4,2,1,3],[2,4,3,1]]";
    const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";

    #[test]
    fn hopf_parses() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.signs(), vec![1, 1]);
        assert_eq!(d.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(d.components(), &[vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn trefoil_parses() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.linking_matrix(), vec![vec![0]]);
        assert_eq!(d.components(), &[vec![1, 2, 3, 4, 5, 6]]);
        assert!(d.is_alternating());
        assert!(d.is_connected_projection());
        // All three crossings have the same handedness.
        let s = d.signs();
        assert!(s.iter().all(|&x| x == s[0]));
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(
            parse_pd("[[1,1],[2]]"),
            Err(PdError::Arity { index: 0, len: 2 })
        );
        assert!(matches!(parse_pd("[[1,2,3"), Err(PdError::Syntax(_))));
        assert_eq!(
            parse_pd("[[1,2,3,4]]"),
            Err(PdError::LabelCount { label: 1, count: 1 })
        );
        assert_eq!(
            parse_pd("[[0,1,1,0]]"),
            Err(PdError::NonPositiveLabel { index: 0, label: 0 })
        );
    }

    #[test]
    fn inconsistent_orientation() {
        // Trefoil with one crossing's under-strand listed backwards.
        let r = parse_pd("[[2,5,1,4],[3,6,4,1],[5,2,6,3]]");
        assert!(matches!(r, Err(PdError::InconsistentOrientation { .. })));
    }

    #[test]
    fn unknot_and_split() {
        let u = parse_pd("[]").unwrap();
        assert_eq!(u.component_count(), 1);
        assert_eq!(u.linking_matrix(), vec![vec![0]]);
        // Two trefoils drawn side by side.
        let split = parse_pd(
            "[[1,4,2,5],[3,6,4,1],[5,2,6,3],[11,14,12,15],[13,16,14,11],[15,12,16,13]]",
        )
        .unwrap();
        assert_eq!(split.component_count(), 2);
        assert!(!split.is_connected_projection());
        assert_eq!(split.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn non_alternating_detected() {
        // Trefoil with its first crossing switched: arc 4 now passes under
        // at both ends.
        let d = parse_pd("[[4,2,5,1],[3,6,4,1],[5,2,6,3]]").unwrap();
        assert!(!d.is_alternating());
        assert!(d.is_connected_projection());
    }

    #[test]
    fn reversing_a_component_negates_linking() {
        let d = parse_pd(HOPF).unwrap();
        let r = d.reverse_component(0).unwrap();
        assert_eq!(r.linking_matrix(), vec![vec![0, -1], vec![-1, 0]]);
        let m = d.mirror().unwrap();
        assert_eq!(m.linking_matrix(), vec![vec![0, -1], vec![-1, 0]]);
    }
}
