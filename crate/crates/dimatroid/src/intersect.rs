//! Common independent sets of two matroids on the same ground set.
//!
//! Membership is the conjunction of the two oracles. Maximum-cardinality
//! sets come from shortest augmenting paths in the exchange digraph;
//! the marked variant runs cheapest augmenting paths with 0/1 weights.
//! [`Dimatroid::exchange_walk`] produces the certificate that two equal-size
//! common independent sets are connected by single-element exchanges through
//! feasible intermediates.

use serde::Serialize;
use std::collections::VecDeque;

use crate::matroid::{Matroid, EXHAUSTIVE_CAP};
use crate::set::ElementSet;
use crate::{Error, Result};

/// An ordered pair of matroids on the same ground set.
#[derive(Clone, Debug)]
pub struct Dimatroid {
    p: Matroid,
    q: Matroid,
}

impl Dimatroid {
    pub fn new(p: Matroid, q: Matroid) -> Result<Self> {
        if p.ground_size() != q.ground_size() {
            return Err(Error::UniverseMismatch {
                expected: p.ground_size(),
                got: q.ground_size(),
            });
        }
        Ok(Dimatroid { p, q })
    }

    pub fn p(&self) -> &Matroid {
        &self.p
    }

    pub fn q(&self) -> &Matroid {
        &self.q
    }

    pub fn ground_size(&self) -> usize {
        self.p.ground_size()
    }

    pub fn ground_set(&self) -> ElementSet {
        self.p.ground_set()
    }

    pub fn is_loopless(&self) -> bool {
        self.p.is_loopless() && self.q.is_loopless()
    }

    pub fn require_loopless(&self) -> Result<()> {
        self.p.require_loopless()?;
        self.q.require_loopless()
    }

    /// Both matroids restricted to `s`, reindexed to `0..|s|`.
    pub fn restrict(&self, s: &ElementSet) -> Result<Dimatroid> {
        Ok(Dimatroid { p: self.p.restrict(s)?, q: self.q.restrict(s)? })
    }

    pub fn is_common_independent(&self, s: &ElementSet) -> Result<bool> {
        if s.universe() != self.ground_size() {
            return Err(Error::UniverseMismatch { expected: self.ground_size(), got: s.universe() });
        }
        Ok(self.common(s.bits()))
    }

    pub(crate) fn common(&self, bits: u64) -> bool {
        self.p.indep(bits) && self.q.indep(bits)
    }

    /// A maximum-cardinality common independent set, grown by shortest
    /// augmenting paths in the exchange digraph. Deterministic: lowest
    /// indices win every tie.
    pub fn max_common_independent(&self) -> ElementSet {
        let mut s = 0u64;
        while let Some(next) = self.augment_unweighted(s) {
            s = next;
        }
        ElementSet::from_bits(self.ground_size(), s)
    }

    /// A common independent set of size exactly `g` maximizing `|S ∩ a|`,
    /// via cheapest augmenting paths (maximum weight gain, then fewest
    /// arcs). Errors if no size-`g` common independent set exists.
    pub fn max_marked_common_independent(&self, a: &ElementSet, g: usize) -> Result<ElementSet> {
        if a.universe() != self.ground_size() {
            return Err(Error::UniverseMismatch { expected: self.ground_size(), got: a.universe() });
        }
        let mut s = 0u64;
        for _ in 0..g {
            match self.augment_weighted(s, a.bits())? {
                Some(next) => s = next,
                None => return Err(Error::NoCommonIndependent(g)),
            }
        }
        Ok(ElementSet::from_bits(self.ground_size(), s))
    }

    /// Exhaustive oracle: the maximum of `|S ∩ a|` over all size-`g` common
    /// independent sets, or -1 when none exists.
    pub fn brute_force_max_common(&self, a: &ElementSet, g: usize) -> Result<i64> {
        let n = self.ground_size();
        if n > EXHAUSTIVE_CAP {
            return Err(Error::TooLarge { n, cap: EXHAUSTIVE_CAP });
        }
        if a.universe() != n {
            return Err(Error::UniverseMismatch { expected: n, got: a.universe() });
        }
        if g > n {
            return Ok(-1);
        }
        if g == 0 {
            return Ok(0);
        }
        let mut best = -1i64;
        for mask in subsets_of_size(n, g) {
            if self.common(mask) {
                best = best.max((mask & a.bits()).count_ones() as i64);
            }
        }
        Ok(best)
    }

    /// Sequencing of `S` and `T` (common independent, equal size `g`) such
    /// that every partial exchange `S - s_1 + t_1 - … + t_{i-1} - s_i` is
    /// again common independent.
    pub fn exchange_walk(&self, s: &ElementSet, t: &ElementSet) -> Result<ExchangeWalk> {
        let n = self.ground_size();
        for x in [s, t] {
            if x.universe() != n {
                return Err(Error::UniverseMismatch { expected: n, got: x.universe() });
            }
            if !self.common(x.bits()) {
                return Err(Error::Precondition(format!("{x} is not common independent")));
            }
        }
        if s.len() != t.len() {
            return Err(Error::Precondition(format!(
                "|{s}| = {} and |{t}| = {} differ",
                s.len(),
                t.len()
            )));
        }
        let g = s.len();
        let mut s_order = Vec::with_capacity(g);
        let mut t_order = Vec::with_capacity(g);
        let mut intermediates = Vec::with_capacity(g);

        if g == 0 {
            return Ok(ExchangeWalk {
                s: *s,
                t: *t,
                s_order,
                t_order,
                intermediates,
            });
        }

        let violation = |detail: String| Error::InvariantViolation {
            claim: "the dimatroid exchange-walk theorem",
            detail,
        };

        // Elements of S not yet removed; removals come only from here, so
        // the s-sequencing is a permutation of S.
        let mut s_left = s.bits();
        let s1 = s_left.trailing_zeros() as usize;
        s_order.push(s1);
        s_left &= s_left - 1;
        let mut cur = s.bits() & !(1 << s1);
        intermediates.push(ElementSet::from_bits(n, cur));

        for _stage in 1..g {
            // t_i: an unused element of T whose addition stays independent
            // in P. It exists by the exchange axiom since |T| > |cur|.
            let mut t_i = None;
            let mut cand = t.bits() & !cur;
            while cand != 0 {
                let e = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                if self.p.indep(cur | 1 << e) {
                    t_i = Some(e);
                    break;
                }
            }
            let t_i = t_i.ok_or_else(|| {
                violation(format!("no element of {t} extends {} in the first matroid",
                    ElementSet::from_bits(n, cur)))
            })?;
            t_order.push(t_i);
            let extended = cur | 1 << t_i;

            // s_{i+1}: a not-yet-removed element of S whose removal restores
            // membership in Q (inside the fundamental circuit when the
            // extension is Q-dependent).
            let s_next = if self.q.indep(extended) {
                s_left.trailing_zeros() as usize
            } else {
                let circuit = self
                    .q
                    .fundamental_circuit(&ElementSet::from_bits(n, cur), t_i)
                    .map_err(|e| violation(format!("fundamental circuit unavailable: {e}")))?;
                let inside = circuit.bits() & s_left;
                if inside == 0 {
                    return Err(violation(format!(
                        "circuit {circuit} avoids the remaining elements of {s}"
                    )));
                }
                inside.trailing_zeros() as usize
            };
            s_order.push(s_next);
            s_left &= !(1 << s_next);
            cur = extended & !(1 << s_next);
            if !self.common(cur) {
                return Err(violation(format!(
                    "intermediate {} is not common independent",
                    ElementSet::from_bits(n, cur)
                )));
            }
            intermediates.push(ElementSet::from_bits(n, cur));
        }

        let last = t.bits() & !cur;
        if last.count_ones() != 1 {
            return Err(violation(format!(
                "final intermediate {} does not reach {t} by one insertion",
                ElementSet::from_bits(n, cur)
            )));
        }
        t_order.push(last.trailing_zeros() as usize);

        Ok(ExchangeWalk { s: *s, t: *t, s_order, t_order, intermediates })
    }

    /// One shortest augmenting path step; `None` when `s` is maximum.
    fn augment_unweighted(&self, s: u64) -> Option<u64> {
        let n = self.ground_size();
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();

        for y in 0..n {
            if s & 1 << y == 0 && self.p.indep(s | 1 << y) {
                if self.q.indep(s | 1 << y) {
                    return Some(s | 1 << y);
                }
                parent[y] = y; // root marker
                queue.push_back(y);
            }
        }

        while let Some(u) = queue.pop_front() {
            if s & 1 << u == 0 {
                // u enters; arcs u -> x for x in S with S - x + u independent
                // in Q (the entering element repairs what the removal costs Q).
                for x in 0..n {
                    if s & 1 << x != 0 && parent[x] == usize::MAX {
                        let swapped = (s & !(1 << x)) | 1 << u;
                        if self.q.indep(swapped) {
                            parent[x] = u;
                            queue.push_back(x);
                        }
                    }
                }
            } else {
                // u leaves; arcs u -> y for y outside S with S - u + y
                // independent in P. A sink y (addable in Q) ends the path.
                for y in 0..n {
                    if s & 1 << y == 0 && parent[y] == usize::MAX {
                        let swapped = (s & !(1 << u)) | 1 << y;
                        if self.p.indep(swapped) {
                            parent[y] = u;
                            if self.q.indep(s | 1 << y) {
                                return Some(apply_path(s, &parent, y));
                            }
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        None
    }

    /// One cheapest augmenting path step: maximize the gain in `|S ∩ a|`,
    /// tie-break by fewest arcs, then by lowest indices.
    fn augment_weighted(&self, s: u64, a: u64) -> Result<Option<u64>> {
        let n = self.ground_size();
        let weight = |v: usize| -> i64 {
            let w = (a >> v) & 1;
            if s & 1 << v != 0 {
                -(w as i64)
            } else {
                w as i64
            }
        };

        // label = (gain, arc count); maximize gain, then minimize arcs.
        let mut label: Vec<Option<(i64, u32)>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_sink = vec![false; n];
        let mut any_node = false;

        for y in 0..n {
            if s & 1 << y == 0 && self.p.indep(s | 1 << y) {
                label[y] = Some((weight(y), 0));
                parent[y] = y;
                any_node = true;
            }
        }
        for y in 0..n {
            if s & 1 << y == 0 && self.q.indep(s | 1 << y) {
                is_sink[y] = true;
            }
        }
        if !any_node {
            return Ok(None);
        }

        let better = |cand: (i64, u32), old: Option<(i64, u32)>| match old {
            None => true,
            Some((g, l)) => cand.0 > g || (cand.0 == g && cand.1 < l),
        };

        // Bellman-Ford to a fixpoint; simple optimal paths have at most n
        // nodes, so convergence must come within n rounds unless a
        // positive-gain cycle exists (impossible while S stays extreme).
        let mut changed = true;
        let mut rounds = 0usize;
        while changed {
            changed = false;
            rounds += 1;
            if rounds > n + 1 {
                return Err(Error::InvariantViolation {
                    claim: "exchange digraph acyclicity for extreme sets",
                    detail: "cheapest-path labels keep improving: positive-gain cycle".into(),
                });
            }
            for u in 0..n {
                let Some((gu, lu)) = label[u] else { continue };
                if s & 1 << u == 0 {
                    for x in 0..n {
                        if s & 1 << x != 0 && self.q.indep((s & !(1 << x)) | 1 << u) {
                            let cand = (gu + weight(x), lu + 1);
                            if better(cand, label[x]) {
                                label[x] = Some(cand);
                                parent[x] = u;
                                changed = true;
                            }
                        }
                    }
                } else {
                    for y in 0..n {
                        if s & 1 << y == 0 && self.p.indep((s & !(1 << u)) | 1 << y) {
                            let cand = (gu + weight(y), lu + 1);
                            if better(cand, label[y]) {
                                label[y] = Some(cand);
                                parent[y] = u;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }

        let mut best: Option<(i64, u32, usize)> = None;
        for y in 0..n {
            if !is_sink[y] {
                continue;
            }
            if let Some((g, l)) = label[y] {
                let replace = match best {
                    None => true,
                    Some((bg, bl, _)) => g > bg || (g == bg && l < bl),
                };
                if replace {
                    best = Some((g, l, y));
                }
            }
        }
        match best {
            Some((_, _, y)) => Ok(Some(apply_path(s, &parent, y))),
            None => Ok(None),
        }
    }
}

fn apply_path(s: u64, parent: &[usize], sink: usize) -> u64 {
    let mut out = s;
    let mut v = sink;
    loop {
        out ^= 1 << v;
        if parent[v] == v {
            break;
        }
        v = parent[v];
    }
    out
}

/// Masks of all size-`k` subsets of `{0..n-1}`, ascending (Gosper's hack).
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if k == 0 || k > n { None } else { Some((1u64 << k) - 1) };
    if k == 0 {
        cur = Some(0);
    }
    std::iter::from_fn(move || {
        let mask = cur?;
        if mask >= limit {
            return None;
        }
        if mask == 0 {
            cur = None;
        } else {
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            cur = Some((((r ^ mask) >> 2) / c) | r);
        }
        Some(mask)
    })
}

/// Certificate for the exchange sequencing of two equal-size common
/// independent sets: the orderings plus every guaranteed-feasible
/// intermediate `R_i = S - s_1 + t_1 - … + t_{i-1} - s_i`.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeWalk {
    pub s: ElementSet,
    pub t: ElementSet,
    pub s_order: Vec<usize>,
    pub t_order: Vec<usize>,
    pub intermediates: Vec<ElementSet>,
}

impl ExchangeWalk {
    /// `S, R_1, …, R_g, T`: consecutive entries differ by a symmetric
    /// difference of at most two elements.
    pub fn candidate_chain(&self) -> Vec<ElementSet> {
        let mut chain = Vec::with_capacity(self.intermediates.len() + 2);
        chain.push(self.s);
        chain.extend(self.intermediates.iter().copied());
        chain.push(self.t);
        chain
    }

    /// Re-checks every structural invariant against the oracles.
    pub fn verify(&self, d: &Dimatroid) -> Result<()> {
        let g = self.s.len();
        let fail = |detail: String| Error::InvariantViolation {
            claim: "the dimatroid exchange-walk theorem",
            detail,
        };
        if self.t.len() != g || self.s_order.len() != g || self.t_order.len() != g {
            return Err(fail("walk orderings do not match the set sizes".into()));
        }
        let mut sorted_s = self.s_order.clone();
        sorted_s.sort_unstable();
        if sorted_s != self.s.members() {
            return Err(fail(format!("s-order is not a permutation of {}", self.s)));
        }
        let mut sorted_t = self.t_order.clone();
        sorted_t.sort_unstable();
        if sorted_t != self.t.members() {
            return Err(fail(format!("t-order is not a permutation of {}", self.t)));
        }
        if self.intermediates.len() != g {
            return Err(fail(format!("expected {g} intermediates, got {}", self.intermediates.len())));
        }
        let mut expected = self.s;
        for (i, r) in self.intermediates.iter().enumerate() {
            expected = expected.without(self.s_order[i]);
            if *r != expected {
                return Err(fail(format!("intermediate {i} is {r}, expected {expected}")));
            }
            if g > 0 && r.len() != g - 1 {
                return Err(fail(format!("intermediate {i} has size {}", r.len())));
            }
            if !d.is_common_independent(r)? {
                return Err(fail(format!("intermediate {r} is not common independent")));
            }
            if i < g - 1 {
                expected = expected.with(self.t_order[i]);
            }
        }
        if g > 0 {
            let last = self.intermediates[g - 1].with(self.t_order[g - 1]);
            if last != self.t {
                return Err(fail(format!("chain ends at {last}, not {}", self.t)));
            }
        }
        let chain = self.candidate_chain();
        for w in chain.windows(2) {
            if w[0].symmetric_difference(&w[1]).len() > 2 {
                return Err(fail(format!("chain step {} -> {} jumps too far", w[0], w[1])));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, members: &[usize]) -> ElementSet {
        ElementSet::from_members(n, members.iter().copied()).unwrap()
    }

    fn k4_graphic() -> Matroid {
        Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Graphic K4 against the three perfect matchings with capacity 1.
    fn k4_example() -> Dimatroid {
        let parts = [set(6, &[0, 5]), set(6, &[1, 4]), set(6, &[2, 3])];
        let q = Matroid::partition(6, &parts, &[1, 1, 1]).unwrap();
        Dimatroid::new(k4_graphic(), q).unwrap()
    }

    /// Matching complex of the 4-cycle: stars of each side, capacity 1.
    fn c4_complex() -> Dimatroid {
        let p = Matroid::partition(4, &[set(4, &[0, 3]), set(4, &[1, 2])], &[1, 1]).unwrap();
        let q = Matroid::partition(4, &[set(4, &[0, 1]), set(4, &[2, 3])], &[1, 1]).unwrap();
        Dimatroid::new(p, q).unwrap()
    }

    #[test]
    fn membership_is_the_conjunction() {
        let d = k4_example();
        assert!(d.is_common_independent(&set(6, &[0, 1, 2])).unwrap()); // star at 0
        assert!(!d.is_common_independent(&set(6, &[0, 5])).unwrap()); // one matching part
        assert!(d.is_common_independent(&ElementSet::empty(6)).unwrap());
    }

    #[test]
    fn max_common_in_k4_example_is_three() {
        let d = k4_example();
        let s = d.max_common_independent();
        assert_eq!(s.len(), 3);
        assert!(d.is_common_independent(&s).unwrap());
    }

    #[test]
    fn max_common_c4_is_a_perfect_matching() {
        let d = c4_complex();
        let s = d.max_common_independent();
        assert_eq!(s.len(), 2);
        assert!(d.is_common_independent(&s).unwrap());
    }

    #[test]
    fn max_common_uniform_pair() {
        let d = Dimatroid::new(
            Matroid::uniform(7, 3).unwrap(),
            Matroid::uniform(7, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(d.max_common_independent().len(), 3);
    }

    #[test]
    fn marked_star_is_found() {
        let d = k4_example();
        let a = set(6, &[0, 1, 2]);
        let s = d.max_marked_common_independent(&a, 3).unwrap();
        assert_eq!(s.intersection(&a).len(), 3);
        assert_eq!(s, a);
    }

    #[test]
    fn marked_with_empty_mark_is_any_size_g_set() {
        let d = k4_example();
        let s = d.max_marked_common_independent(&ElementSet::empty(6), 2).unwrap();
        assert_eq!(s.len(), 2);
        assert!(d.is_common_independent(&s).unwrap());
    }

    #[test]
    fn marked_c4_perfect_matching() {
        let d = c4_complex();
        let a = set(4, &[0, 2]);
        let s = d.max_marked_common_independent(&a, 2).unwrap();
        assert_eq!(s, a);
    }

    #[test]
    fn marked_rejects_unreachable_size() {
        let d = c4_complex();
        assert!(matches!(
            d.max_marked_common_independent(&ElementSet::empty(4), 3),
            Err(Error::NoCommonIndependent(3))
        ));
    }

    #[test]
    fn brute_force_edges() {
        let d = k4_example();
        assert_eq!(d.brute_force_max_common(&d.ground_set(), 3).unwrap(), 3);
        assert_eq!(d.brute_force_max_common(&d.ground_set(), 0).unwrap(), 0);
        assert_eq!(d.brute_force_max_common(&d.ground_set(), 4).unwrap(), -1);
    }

    #[test]
    fn walk_between_disjoint_uniform_sets() {
        let d = Dimatroid::new(
            Matroid::uniform(4, 2).unwrap(),
            Matroid::uniform(4, 2).unwrap(),
        )
        .unwrap();
        let s = set(4, &[0, 1]);
        let t = set(4, &[2, 3]);
        let w = d.exchange_walk(&s, &t).unwrap();
        w.verify(&d).unwrap();
        assert_eq!(w.intermediates.len(), 2);
    }

    #[test]
    fn walk_from_a_set_to_itself() {
        let d = k4_example();
        let s = set(6, &[0, 1, 2]);
        let w = d.exchange_walk(&s, &s).unwrap();
        w.verify(&d).unwrap();
    }

    #[test]
    fn walk_between_k4_stars() {
        let d = k4_example();
        let star_a = set(6, &[0, 1, 2]); // edges 01,02,03
        let star_b = set(6, &[0, 3, 4]); // edges 01,12,13
        assert!(d.is_common_independent(&star_b).unwrap());
        let w = d.exchange_walk(&star_a, &star_b).unwrap();
        w.verify(&d).unwrap();
        for r in &w.intermediates {
            assert!(d.is_common_independent(r).unwrap());
            assert_eq!(r.len(), 2);
        }
    }

    #[test]
    fn walk_preconditions() {
        let d = k4_example();
        let tri = set(6, &[0, 1, 3]);
        assert!(d.exchange_walk(&tri, &set(6, &[0, 1, 2])).is_err());
        assert!(d
            .exchange_walk(&set(6, &[0]), &set(6, &[0, 1, 2]))
            .is_err());
    }

    #[test]
    fn walk_of_empty_sets() {
        let d = c4_complex();
        let w = d.exchange_walk(&ElementSet::empty(4), &ElementSet::empty(4)).unwrap();
        w.verify(&d).unwrap();
        assert_eq!(w.candidate_chain().len(), 2);
    }

    #[test]
    fn chain_marked_counts_move_by_at_most_one() {
        let d = k4_example();
        let w = d.exchange_walk(&set(6, &[0, 1, 2]), &set(6, &[2, 4, 5])).unwrap();
        w.verify(&d).unwrap();
        for a_mask in 0u64..64 {
            let a = ElementSet::from_bits(6, a_mask);
            let chain = w.candidate_chain();
            for pair in chain.windows(2) {
                let before = pair[0].intersection(&a).len() as i64;
                let after = pair[1].intersection(&a).len() as i64;
                assert!((before - after).abs() <= 1);
            }
        }
    }

    #[test]
    fn subsets_of_size_enumerates_choose() {
        assert_eq!(subsets_of_size(5, 2).count(), 10);
        assert_eq!(subsets_of_size(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(4, 4).collect::<Vec<_>>(), vec![0b1111]);
    }

    #[test]
    fn ground_size_mismatch_rejected() {
        let p = Matroid::uniform(3, 1).unwrap();
        let q = Matroid::uniform(4, 1).unwrap();
        assert!(Dimatroid::new(p, q).is_err());
    }
}
