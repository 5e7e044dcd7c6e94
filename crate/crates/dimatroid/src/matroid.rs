//! Matroid oracles over a fixed ground set.
//!
//! A [`Matroid`] answers independence and rank queries. Concrete
//! constructions: uniform, partition, graphic, binary-linear, explicit
//! (given as independent sets or as bases), plus dual, truncation and
//! restriction wrappers. Explicit families are checked against the matroid
//! axioms on construction; see [`verify_matroid_axioms`].

use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::set::{full_mask, ElementSet, MAX_UNIVERSE};
use crate::{Error, Result};

/// Hard cap for routines that sweep all subsets of the ground set.
pub const EXHAUSTIVE_CAP: usize = 22;

/// Declarative description of a matroid; the JSON instance schema mirrors
/// this type (see the repository README for the exact field names).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    /// Independent iff `|S| <= r`.
    Uniform { n: usize, r: usize },
    /// At most `capacities[i]` elements from `parts[i]`.
    Partition { n: usize, parts: Vec<Vec<usize>>, capacities: Vec<usize> },
    /// Element `i` is the `i`-th edge; independent iff acyclic.
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    /// Element `i` is a column over GF(2); independent iff linearly independent.
    Binary { columns: Vec<Vec<u8>> },
    /// Full list of independent sets, or the list of bases.
    Explicit {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        independent: Option<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bases: Option<Vec<Vec<usize>>>,
    },
    Dual { inner: Box<MatroidSpec> },
    Truncation { inner: Box<MatroidSpec>, g: usize },
    Restriction { inner: Box<MatroidSpec>, elements: Vec<usize> },
}

#[derive(Clone)]
enum Form {
    Uniform { r: usize },
    Partition { parts: Vec<u64>, caps: Vec<usize> },
    Graphic { vertices: usize, endpoints: Vec<(u32, u32)> },
    Binary { columns: Vec<u64> },
    Explicit { family: Arc<HashSet<u64>> },
    Dual { inner: Box<Matroid> },
    Truncation { inner: Box<Matroid>, g: usize },
    Restriction { inner: Box<Matroid>, members: Vec<u32> },
}

/// An immutable independence oracle; all queries are pure, so sharing a
/// matroid across threads is safe.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    full_rank: usize,
    form: Form,
}

impl Matroid {
    pub fn from_spec(spec: &MatroidSpec) -> Result<Self> {
        match spec {
            MatroidSpec::Uniform { n, r } => Self::uniform(*n, *r),
            MatroidSpec::Partition { n, parts, capacities } => {
                let parts: Result<Vec<ElementSet>> = parts
                    .iter()
                    .map(|p| ElementSet::from_members(*n, p.iter().copied()))
                    .collect();
                Self::partition(*n, &parts?, capacities)
            }
            MatroidSpec::Graphic { vertices, edges } => Self::graphic(*vertices, edges),
            MatroidSpec::Binary { columns } => Self::binary(columns),
            MatroidSpec::Explicit { n, independent, bases } => match (independent, bases) {
                (Some(sets), None) => {
                    let sets: Result<Vec<ElementSet>> = sets
                        .iter()
                        .map(|s| ElementSet::from_members(*n, s.iter().copied()))
                        .collect();
                    Self::from_independent_sets(*n, &sets?)
                }
                (None, Some(bs)) => {
                    let bs: Result<Vec<ElementSet>> = bs
                        .iter()
                        .map(|s| ElementSet::from_members(*n, s.iter().copied()))
                        .collect();
                    Self::from_bases(*n, &bs?)
                }
                _ => Err(Error::InvalidSpec(
                    "explicit spec takes exactly one of \"independent\" or \"bases\"".into(),
                )),
            },
            MatroidSpec::Dual { inner } => Ok(Self::from_spec(inner)?.dual()),
            MatroidSpec::Truncation { inner, g } => {
                let inner = Self::from_spec(inner)?;
                if *g > inner.full_rank {
                    return Err(Error::InvalidSpec(format!(
                        "truncation level {g} exceeds inner rank {}",
                        inner.full_rank
                    )));
                }
                Ok(inner.truncate(*g))
            }
            MatroidSpec::Restriction { inner, elements } => {
                let inner = Self::from_spec(inner)?;
                let s = ElementSet::from_members(inner.n, elements.iter().copied())?;
                inner.restrict(&s)
            }
        }
    }

    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(Matroid { n, full_rank: r.min(n), form: Form::Uniform { r } })
    }

    /// Partition matroid: `parts` must be pairwise disjoint and cover the
    /// ground set; independence means at most `caps[i]` members of `parts[i]`.
    pub fn partition(n: usize, parts: &[ElementSet], caps: &[usize]) -> Result<Self> {
        check_ground(n)?;
        if parts.len() != caps.len() {
            return Err(Error::InvalidSpec(format!(
                "{} parts but {} capacities",
                parts.len(),
                caps.len()
            )));
        }
        let mut union = 0u64;
        for p in parts {
            if p.universe() != n {
                return Err(Error::UniverseMismatch { expected: n, got: p.universe() });
            }
            if union & p.bits() != 0 {
                return Err(Error::InvalidSpec("partition parts overlap".into()));
            }
            union |= p.bits();
        }
        if union != full_mask(n) {
            return Err(Error::InvalidSpec("partition parts do not cover the ground set".into()));
        }
        let form = Form::Partition { parts: parts.iter().map(|p| p.bits()).collect(), caps: caps.to_vec() };
        Ok(with_greedy_rank(n, form))
    }

    /// Graphic matroid of a multigraph; element `i` is `edges[i]`. Self-loops
    /// are allowed and become loops of the matroid.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_ground(edges.len())?;
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidSpec(format!(
                    "edge ({u},{v}) out of range for {vertices} vertices"
                )));
            }
        }
        let endpoints = edges.iter().map(|&(u, v)| (u as u32, v as u32)).collect();
        Ok(with_greedy_rank(edges.len(), Form::Graphic { vertices, endpoints }))
    }

    /// Binary-linear matroid: one GF(2) column per element, all of the same
    /// length (at most 64 rows).
    pub fn binary(columns: &[Vec<u8>]) -> Result<Self> {
        check_ground(columns.len())?;
        let dim = columns.first().map_or(0, Vec::len);
        if dim > 64 {
            return Err(Error::TooLarge { n: dim, cap: 64 });
        }
        let mut packed = Vec::with_capacity(columns.len());
        for col in columns {
            if col.len() != dim {
                return Err(Error::InvalidSpec("binary columns have unequal lengths".into()));
            }
            let mut bits = 0u64;
            for (row, &b) in col.iter().enumerate() {
                match b {
                    0 => {}
                    1 => bits |= 1 << row,
                    _ => return Err(Error::InvalidSpec("binary column entries must be 0 or 1".into())),
                }
            }
            packed.push(bits);
        }
        Ok(with_greedy_rank(columns.len(), Form::Binary { columns: packed }))
    }

    /// Builds from the full list of independent sets; the family must be
    /// closed down and satisfy the matroid exchange axiom.
    pub fn from_independent_sets(n: usize, sets: &[ElementSet]) -> Result<Self> {
        check_explicit_ground(n)?;
        let family = collect_family(n, sets)?;
        if let Some(v) = verify_family(n, &family) {
            return Err(Error::InvalidSpec(format!("not a matroid: {v}")));
        }
        Ok(with_greedy_rank(n, Form::Explicit { family: Arc::new(family) }))
    }

    /// Builds from a list of bases: independence means being a subset of
    /// some basis. Bases must have equal cardinality and the resulting
    /// family must satisfy the exchange axiom.
    pub fn from_bases(n: usize, bases: &[ElementSet]) -> Result<Self> {
        check_explicit_ground(n)?;
        if bases.is_empty() {
            return Err(Error::InvalidSpec("at least one basis is required".into()));
        }
        let size = bases[0].len();
        for b in bases {
            if b.universe() != n {
                return Err(Error::UniverseMismatch { expected: n, got: b.universe() });
            }
            if b.len() != size {
                return Err(Error::InvalidSpec(format!(
                    "bases of unequal cardinality: {} vs {}",
                    bases[0], b
                )));
            }
        }
        // Down-closure by removing one element at a time.
        let mut family: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = bases.iter().map(ElementSet::bits).collect();
        while let Some(m) = stack.pop() {
            if family.insert(m) {
                let mut rest = m;
                while rest != 0 {
                    let e = rest.trailing_zeros();
                    rest &= rest - 1;
                    stack.push(m & !(1 << e));
                }
            }
        }
        if let Some(v) = verify_family(n, &family) {
            return Err(Error::InvalidSpec(format!("bases do not span a matroid: {v}")));
        }
        Ok(with_greedy_rank(n, Form::Explicit { family: Arc::new(family) }))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        self.check_universe(s)?;
        Ok(self.indep(s.bits()))
    }

    /// Size of a maximum independent subset of `s`, computed greedily; the
    /// exchange axiom makes the greedy value exact.
    pub fn rank(&self, s: &ElementSet) -> Result<usize> {
        self.check_universe(s)?;
        Ok(self.rank_bits(s.bits()))
    }

    /// The unique circuit inside `s + t`, given `s` independent and `s + t`
    /// dependent: exactly the elements whose removal restores independence.
    pub fn fundamental_circuit(&self, s: &ElementSet, t: usize) -> Result<ElementSet> {
        self.check_universe(s)?;
        if t >= self.n {
            return Err(Error::InvalidSpec(format!("element {t} out of range {}", self.n)));
        }
        if !self.indep(s.bits()) {
            return Err(Error::Precondition(format!("{s} is not independent")));
        }
        let st = s.bits() | 1 << t;
        if self.indep(st) {
            return Err(Error::Precondition(format!("{s} + {t} is independent; no circuit")));
        }
        let mut circuit = 0u64;
        let mut rest = st;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            if self.indep(st & !(1 << x)) {
                circuit |= 1 << x;
            }
        }
        Ok(ElementSet::from_bits(self.n, circuit))
    }

    /// Dual matroid: `S` is independent iff the complement of `S` spans.
    pub fn dual(&self) -> Matroid {
        Matroid {
            n: self.n,
            full_rank: self.n - self.full_rank,
            form: Form::Dual { inner: Box::new(self.clone()) },
        }
    }

    /// Truncation to rank `g`: independent iff independent and `|S| <= g`.
    pub fn truncate(&self, g: usize) -> Matroid {
        Matroid {
            n: self.n,
            full_rank: self.full_rank.min(g),
            form: Form::Truncation { inner: Box::new(self.clone()), g },
        }
    }

    /// Restriction to `s`, with the ground set reindexed to `0..|s|` in
    /// ascending order of the members of `s`.
    pub fn restrict(&self, s: &ElementSet) -> Result<Matroid> {
        self.check_universe(s)?;
        let members: Vec<u32> = s.iter().map(|e| e as u32).collect();
        let form =
            Form::Restriction { inner: Box::new(self.clone()), members: members.clone() };
        Ok(with_greedy_rank(members.len(), form))
    }

    /// Dependent singletons.
    pub fn loops(&self) -> ElementSet {
        let mut bits = 0u64;
        for e in 0..self.n {
            if !self.indep(1 << e) {
                bits |= 1 << e;
            }
        }
        ElementSet::from_bits(self.n, bits)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// Errors with [`Error::Loops`] unless every singleton is independent.
    pub fn require_loopless(&self) -> Result<()> {
        let loops = self.loops();
        if loops.is_empty() {
            Ok(())
        } else {
            Err(Error::Loops(loops))
        }
    }

    /// One-line description of the construction tree.
    pub fn describe(&self) -> String {
        match &self.form {
            Form::Uniform { r } => format!("uniform(n={},r={})", self.n, r),
            Form::Partition { parts, .. } => format!("partition(n={},parts={})", self.n, parts.len()),
            Form::Graphic { vertices, .. } => format!("graphic(v={},e={})", vertices, self.n),
            Form::Binary { .. } => format!("binary(n={})", self.n),
            Form::Explicit { family } => format!("explicit(n={},sets={})", self.n, family.len()),
            Form::Dual { inner } => format!("dual({})", inner.describe()),
            Form::Truncation { inner, g } => format!("trunc({},g={})", inner.describe(), g),
            Form::Restriction { inner, members } => {
                format!("restrict({},k={})", inner.describe(), members.len())
            }
        }
    }

    fn check_universe(&self, s: &ElementSet) -> Result<()> {
        if s.universe() != self.n {
            Err(Error::UniverseMismatch { expected: self.n, got: s.universe() })
        } else {
            Ok(())
        }
    }

    pub(crate) fn indep(&self, bits: u64) -> bool {
        match &self.form {
            Form::Uniform { r } => (bits.count_ones() as usize) <= *r,
            Form::Partition { parts, caps } => parts
                .iter()
                .zip(caps)
                .all(|(p, c)| (bits & p).count_ones() as usize <= *c),
            Form::Graphic { vertices, endpoints } => graphic_acyclic(*vertices, endpoints, bits),
            Form::Binary { columns } => binary_independent(columns, bits),
            Form::Explicit { family } => family.contains(&bits),
            Form::Dual { inner } => {
                inner.rank_bits(!bits & full_mask(self.n)) == inner.full_rank
            }
            Form::Truncation { inner, g } => {
                (bits.count_ones() as usize) <= *g && inner.indep(bits)
            }
            Form::Restriction { inner, members } => {
                let mut mapped = 0u64;
                let mut rest = bits;
                while rest != 0 {
                    let i = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    mapped |= 1 << members[i];
                }
                inner.indep(mapped)
            }
        }
    }

    pub(crate) fn rank_bits(&self, bits: u64) -> usize {
        let mut acc = 0u64;
        let mut rest = bits;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            if self.indep(acc | 1 << e) {
                acc |= 1 << e;
            }
        }
        acc.count_ones() as usize
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid[{}]", self.describe())
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_UNIVERSE {
        Err(Error::TooLarge { n, cap: MAX_UNIVERSE })
    } else {
        Ok(())
    }
}

fn check_explicit_ground(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        Err(Error::TooLarge { n, cap: EXHAUSTIVE_CAP })
    } else {
        Ok(())
    }
}

fn with_greedy_rank(n: usize, form: Form) -> Matroid {
    let mut m = Matroid { n, full_rank: 0, form };
    m.full_rank = m.rank_bits(full_mask(n));
    m
}

fn graphic_acyclic(vertices: usize, endpoints: &[(u32, u32)], bits: u64) -> bool {
    let mut parent: Vec<u32> = (0..vertices as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut rest = bits;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = endpoints[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru as usize] = rv;
    }
    true
}

fn binary_independent(columns: &[u64], bits: u64) -> bool {
    let mut basis = [0u64; 64];
    let mut rest = bits;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut v = columns[e];
        while v != 0 {
            let h = 63 - v.leading_zeros() as usize;
            if basis[h] == 0 {
                basis[h] = v;
                break;
            }
            v ^= basis[h];
        }
        if v == 0 {
            return false;
        }
    }
    true
}

fn collect_family(n: usize, sets: &[ElementSet]) -> Result<HashSet<u64>> {
    let mut family = HashSet::with_capacity(sets.len());
    for s in sets {
        if s.universe() != n {
            return Err(Error::UniverseMismatch { expected: n, got: s.universe() });
        }
        family.insert(s.bits());
    }
    Ok(family)
}

/// How an explicit family fails to be a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// `set` is in the family but `missing` (one element removed) is not.
    NotClosedDown { set: ElementSet, missing: ElementSet },
    /// Inside `subset`, `smaller` is maximal yet `larger` is bigger and
    /// independent — the exchange axiom fails.
    UnequalMaximalSets { subset: ElementSet, smaller: ElementSet, larger: ElementSet },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotClosedDown { set, missing } => {
                write!(f, "{missing} missing although {set} is present: not closed down")
            }
            AxiomViolation::UnequalMaximalSets { subset, smaller, larger } => write!(
                f,
                "inside {subset}, {smaller} is maximal but {larger} is larger and independent"
            ),
        }
    }
}

/// Checks an explicit family against the matroid axioms: downward closure,
/// and equal size of all maximal independent subsets of every `S ⊆ V`.
/// Violations are a return value, not an error.
pub fn verify_matroid_axioms(n: usize, sets: &[ElementSet]) -> Result<Option<AxiomViolation>> {
    check_explicit_ground(n)?;
    let family = collect_family(n, sets)?;
    Ok(verify_family(n, &family))
}

fn verify_family(n: usize, family: &HashSet<u64>) -> Option<AxiomViolation> {
    let mut members: Vec<u64> = family.iter().copied().collect();
    members.sort_unstable();

    if !family.contains(&0) {
        let set = members.first().copied().unwrap_or(0);
        return Some(AxiomViolation::NotClosedDown {
            set: ElementSet::from_bits(n, set),
            missing: ElementSet::empty(n),
        });
    }
    for &m in &members {
        let mut rest = m;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            let child = m & !(1 << e);
            if !family.contains(&child) {
                return Some(AxiomViolation::NotClosedDown {
                    set: ElementSet::from_bits(n, m),
                    missing: ElementSet::from_bits(n, child),
                });
            }
        }
    }

    // maxind[S] = size of the largest family member inside S.
    let size = 1usize << n;
    let mut maxind = vec![0u8; size];
    for mask in 1..size {
        let mut best = if family.contains(&(mask as u64)) {
            mask.count_ones() as u8
        } else {
            0
        };
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.max(maxind[mask & !(1usize << e)]);
        }
        maxind[mask] = best;
    }

    // A violation exists iff some member I is maximal inside the largest set
    // it is maximal in, S*(I), while S*(I) holds a bigger member.
    let full = full_mask(n);
    for &m in &members {
        let mut star = m;
        let mut outside = full & !m;
        while outside != 0 {
            let e = outside.trailing_zeros();
            outside &= outside - 1;
            if !family.contains(&(m | 1 << e)) {
                star |= 1 << e;
            }
        }
        let target = maxind[star as usize];
        if (target as usize) > m.count_ones() as usize {
            let larger = recover_member(n, family, &maxind, star, target);
            return Some(AxiomViolation::UnequalMaximalSets {
                subset: ElementSet::from_bits(n, star),
                smaller: ElementSet::from_bits(n, m),
                larger: ElementSet::from_bits(n, larger),
            });
        }
    }
    None
}

fn recover_member(n: usize, family: &HashSet<u64>, maxind: &[u8], start: u64, target: u8) -> u64 {
    let mut cur = start;
    loop {
        if family.contains(&cur) && cur.count_ones() as u8 == target {
            return cur;
        }
        let mut rest = cur;
        let mut next = None;
        while rest != 0 {
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            let child = cur & !(1 << e);
            if maxind[child as usize] == target {
                next = Some(child);
                break;
            }
        }
        cur = next.unwrap_or_else(|| panic!("max independent subset recovery failed in [{n}]"));
    }
}

/// Greedy-basis table over all subsets: `table[mask]` is the rank of `mask`.
/// One independence query per subset.
pub(crate) fn rank_table(m: &Matroid) -> Vec<u8> {
    let n = m.ground_size();
    assert!(n <= EXHAUSTIVE_CAP, "rank table over n={n} is too large");
    let size = 1usize << n;
    let mut basis = vec![0u64; size];
    let mut ranks = vec![0u8; size];
    for mask in 1..size {
        let top = usize::BITS - 1 - mask.leading_zeros();
        let below = basis[mask & !(1usize << top)];
        let cand = below | 1u64 << top;
        let b = if m.indep(cand) { cand } else { below };
        basis[mask] = b;
        ranks[mask] = b.count_ones() as u8;
    }
    ranks
}
