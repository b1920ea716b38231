//! Exhaustive separation search at desk scale.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::combinatorics::for_each_subset_of;
use crate::graph::{normalized, Graph, GraphError, Vertex};
use crate::separation::Separation;

/// Default vertex-count cap for exhaustive separation search.
pub const DEFAULT_SEARCH_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Minimize {
    #[default]
    None,
    Side1,
    Side2,
}

/// Constraints on the separations to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationQuery {
    pub min_order: usize,
    pub max_order: usize,
    /// Vertices that must lie in side1 (cut allowed).
    pub must_side1: Vec<Vertex>,
    /// Vertices that must lie in side2 (cut allowed).
    pub must_side2: Vec<Vertex>,
    /// Vertices that must lie in side1 outside the cut.
    pub private1: Vec<Vertex>,
    /// Vertices that must lie in side2 outside the cut.
    pub private2: Vec<Vertex>,
    /// Vertices that must lie in the cut.
    pub must_cut: Vec<Vertex>,
    pub min_side1: usize,
    pub min_side2: usize,
    pub minimize: Minimize,
    /// Refuse graphs with more vertices than this.
    pub cap: usize,
}

impl SeparationQuery {
    pub fn new(max_order: usize) -> Self {
        SeparationQuery {
            min_order: 0,
            max_order,
            must_side1: Vec::new(),
            must_side2: Vec::new(),
            private1: Vec::new(),
            private2: Vec::new(),
            must_cut: Vec::new(),
            min_side1: 0,
            min_side2: 0,
            minimize: Minimize::None,
            cap: DEFAULT_SEARCH_CAP,
        }
    }

    pub fn exact_order(mut self, k: usize) -> Self {
        self.min_order = k;
        self.max_order = k;
        self
    }

    pub fn sides(mut self, must1: &[Vertex], must2: &[Vertex]) -> Self {
        self.must_side1 = must1.to_vec();
        self.must_side2 = must2.to_vec();
        self
    }

    pub fn private(mut self, p1: &[Vertex], p2: &[Vertex]) -> Self {
        self.private1 = p1.to_vec();
        self.private2 = p2.to_vec();
        self
    }

    pub fn cut_contains(mut self, vs: &[Vertex]) -> Self {
        self.must_cut = vs.to_vec();
        self
    }

    pub fn side_sizes(mut self, min1: usize, min2: usize) -> Self {
        self.min_side1 = min1;
        self.min_side2 = min2;
        self
    }

    pub fn minimize(mut self, m: Minimize) -> Self {
        self.minimize = m;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {n} vertices, above the exhaustive search cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

/// Calls `f` on every separation matching `q`: cut sizes ascending, cuts in
/// lexicographic order, then component assignments in binary order.
pub fn for_each_separation<F>(g: &Graph, q: &SeparationQuery, mut f: F) -> Result<ControlFlow<()>, SearchError>
where
    F: FnMut(&Separation) -> ControlFlow<()>,
{
    let n = g.n();
    if n > q.cap {
        return Err(SearchError::TooLarge { n, cap: q.cap });
    }
    for list in [&q.must_side1, &q.must_side2, &q.private1, &q.private2, &q.must_cut] {
        g.check_vertices(list.iter())?;
    }
    let private1 = g.mask(&q.private1);
    let private2 = g.mask(&q.private2);
    let want1 = g.mask(&q.must_side1);
    let want2 = g.mask(&q.must_side2);
    let mut forced: Vec<Vertex> = q.must_cut.clone();
    forced.extend(g.vertices().filter(|&v| want1[v] && want2[v]));
    let forced = normalized(&forced);
    if forced.iter().any(|&v| private1[v] || private2[v]) {
        return Ok(ControlFlow::Continue(()));
    }
    let in_forced = g.mask(&forced);
    let optional: Vec<Vertex> = g
        .vertices()
        .filter(|&v| !in_forced[v] && !private1[v] && !private2[v])
        .collect();
    for order in q.min_order.max(forced.len())..=q.max_order.min(n) {
        let flow = for_each_subset_of(&optional, order - forced.len(), &mut |extra: &[Vertex]| {
            let mut cut = forced.clone();
            cut.extend_from_slice(extra);
            cut.sort_unstable();
            visit_cut(g, q, &cut, &private1, &private2, &want1, &want2, &mut f)
        });
        if flow.is_break() {
            return Ok(ControlFlow::Break(()));
        }
    }
    Ok(ControlFlow::Continue(()))
}

#[allow(clippy::too_many_arguments)]
fn visit_cut<F>(
    g: &Graph,
    q: &SeparationQuery,
    cut: &[Vertex],
    private1: &[bool],
    private2: &[bool],
    want1: &[bool],
    want2: &[bool],
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Separation) -> ControlFlow<()>,
{
    let in_cut = g.mask(cut);
    let comps = g.components_avoiding(&in_cut);
    if comps.len() < 2 {
        return ControlFlow::Continue(());
    }
    let mut base1: Vec<Vertex> = Vec::new();
    let mut base2: Vec<Vertex> = Vec::new();
    let mut free: Vec<&Vec<Vertex>> = Vec::new();
    for c in &comps {
        let needs1 = c.iter().any(|&v| private1[v] || want1[v]);
        let needs2 = c.iter().any(|&v| private2[v] || want2[v]);
        match (needs1, needs2) {
            (true, true) => return ControlFlow::Continue(()),
            (true, false) => base1.extend(c),
            (false, true) => base2.extend(c),
            (false, false) => free.push(c),
        }
    }
    for mask in 0u64..(1u64 << free.len()) {
        let mut p1 = base1.clone();
        let mut p2 = base2.clone();
        for (i, c) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p1.extend(c.iter());
            } else {
                p2.extend(c.iter());
            }
        }
        if p1.is_empty() || p2.is_empty() {
            continue;
        }
        if p1.len() + cut.len() < q.min_side1 || p2.len() + cut.len() < q.min_side2 {
            continue;
        }
        let mut side1 = p1;
        side1.extend_from_slice(cut);
        side1.sort_unstable();
        let mut side2 = p2;
        side2.extend_from_slice(cut);
        side2.sort_unstable();
        let sep = Separation {
            side1,
            side2,
            cut: cut.to_vec(),
        };
        f(&sep)?;
    }
    ControlFlow::Continue(())
}

/// A separation matching `q`; with a minimisation target, one whose chosen
/// side has the fewest vertices (ties broken lexicographically).
pub fn find_separation(g: &Graph, q: &SeparationQuery) -> Result<Option<Separation>, SearchError> {
    let mut best: Option<Separation> = None;
    let key = |s: &Separation| -> Option<(usize, Vec<Vertex>)> {
        match q.minimize {
            Minimize::None => None,
            Minimize::Side1 => Some((s.side1.len(), s.side1.clone())),
            Minimize::Side2 => Some((s.side2.len(), s.side2.clone())),
        }
    };
    let _ = for_each_separation(g, q, |s| {
        if q.minimize == Minimize::None {
            best = Some(s.clone());
            return ControlFlow::Break(());
        }
        if best.as_ref().is_none_or(|b| key(s) < key(b)) {
            best = Some(s.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn cycle_antipodes() {
        let c6 = families::cycle(6);
        let s = find_separation(&c6, &SeparationQuery::new(2).private(&[0], &[3]))
            .unwrap()
            .unwrap();
        assert_eq!(s.order(), 2);
        Separation::new(&c6, &s.side1, &s.side2).unwrap();
        assert!(s.side1.contains(&0) && s.side2.contains(&3));
    }

    #[test]
    fn k6_has_no_small_separation() {
        let k6 = families::complete(6);
        assert_eq!(find_separation(&k6, &SeparationQuery::new(4).private(&[0], &[1])).unwrap(), None);
    }

    #[test]
    fn recovers_gadget_separation() {
        let k7 = families::complete(7);
        let (g, spec) = crate::tk5::gadget::build_gadget(Some((&k7, &[0, 1, 2, 3, 4][..]))).unwrap();
        let s = find_separation(
            &g,
            &SeparationQuery::new(5)
                .private(&[5], &[spec.b_i[0]])
                .side_sizes(0, 9)
                .minimize(Minimize::Side2),
        )
        .unwrap()
        .unwrap();
        assert_eq!(s.cut, vec![0, 1, 2, 3, 4]);
        assert_eq!(s.side2, normalized(&spec.vertices()));
    }

    #[test]
    fn minimal_side_is_minimum_by_brute_force() {
        for seed in 0..40 {
            let g = crate::gen::random_graph(8, 0.35, seed);
            let q = SeparationQuery::new(3).minimize(Minimize::Side1).private(&[0], &[]);
            let found = find_separation(&g, &q).unwrap();
            // Brute force over all (side1, side2) vertex pairs.
            let mut best: Option<usize> = None;
            for m1 in 0u32..256 {
                for m2 in 0u32..256 {
                    let s1: Vec<usize> = (0..8).filter(|i| m1 >> i & 1 == 1).collect();
                    let s2: Vec<usize> = (0..8).filter(|i| m2 >> i & 1 == 1).collect();
                    if !s1.contains(&0) || s2.contains(&0) {
                        continue;
                    }
                    if let Ok(sep) = Separation::new(&g, &s1, &s2) {
                        if sep.order() <= 3 {
                            best = Some(best.map_or(s1.len(), |b| b.min(s1.len())));
                        }
                    }
                }
            }
            assert_eq!(found.map(|s| s.side1.len()), best, "seed {seed}");
        }
    }

    #[test]
    fn refuses_large_graphs() {
        let g = families::cycle(20);
        assert!(matches!(
            find_separation(&g, &SeparationQuery::new(2)),
            Err(SearchError::TooLarge { n: 20, cap: 16 })
        ));
    }
}
