//! Reproducible random instances. Every generator is a pure function of a
//! 64-bit seed (ChaCha8 behind the scenes), so suites and searches rerun
//! byte-identically.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::intersect::Dimatroid;
use crate::matroid::{Matroid, MatroidSpec};
use crate::set::ElementSet;
use crate::{Error, Result};

use super::instance::Instance;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated matroid together with its serializable spec.
#[derive(Clone, Debug)]
pub struct GeneratedMatroid {
    pub label: String,
    pub spec: MatroidSpec,
    pub matroid: Matroid,
}

/// A generated dimatroid together with both specs.
#[derive(Clone, Debug)]
pub struct GeneratedDimatroid {
    pub label: String,
    pub p_spec: MatroidSpec,
    pub q_spec: MatroidSpec,
    pub dimatroid: Dimatroid,
}

impl GeneratedDimatroid {
    pub fn instance(&self) -> Instance {
        Instance {
            label: self.label.clone(),
            p: self.p_spec.clone(),
            q: Some(self.q_spec.clone()),
            partition: None,
        }
    }
}

/// A random matroid spanning all spec constructions (the plain families
/// plus dual, truncation and restriction wrappers). With `loopless` the
/// draw is retried until no singleton is dependent.
pub fn random_matroid(rng: &mut ChaCha8Rng, n: usize, loopless: bool) -> (MatroidSpec, Matroid) {
    assert!(n >= 1, "generators need a nonempty ground set");
    loop {
        let spec = candidate_spec(rng, n);
        let Ok(m) = Matroid::from_spec(&spec) else { continue };
        debug_assert_eq!(m.ground_size(), n);
        if !loopless || m.is_loopless() {
            return (spec, m);
        }
    }
}

fn candidate_spec(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    match rng.gen_range(0..8u32) {
        0 => base_spec(rng, n, 0),
        1 => base_spec(rng, n, 1),
        2 => base_spec(rng, n, 2),
        3 => base_spec(rng, n, 3),
        4 if n <= 10 => explicit_spec(rng, n),
        5 => {
            let kind = rng.gen_range(0..4);
            MatroidSpec::Dual { inner: Box::new(base_spec(rng, n, kind)) }
        }
        6 => {
            let kind = rng.gen_range(0..4);
            let inner = base_spec(rng, n, kind);
            let rank = Matroid::from_spec(&inner).map(|m| m.full_rank()).unwrap_or(0);
            if rank == 0 {
                return inner;
            }
            MatroidSpec::Truncation { inner: Box::new(inner), g: rng.gen_range(1..=rank) }
        }
        7 => {
            let extra = rng.gen_range(1..=3usize).min(crate::set::MAX_UNIVERSE - n);
            let kind = rng.gen_range(0..4);
            let inner = base_spec(rng, n + extra, kind);
            let mut elems: Vec<usize> = (0..n + extra).collect();
            elems.shuffle(rng);
            elems.truncate(n);
            elems.sort_unstable();
            MatroidSpec::Restriction { inner: Box::new(inner), elements: elems }
        }
        _ => {
            let kind = rng.gen_range(0..4);
            base_spec(rng, n, kind)
        }
    }
}

fn base_spec(rng: &mut ChaCha8Rng, n: usize, kind: u32) -> MatroidSpec {
    match kind {
        0 => MatroidSpec::Uniform { n, r: rng.gen_range(1..=n) },
        1 => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let m = rng.gen_range(1..=n.min(4));
            let mut parts = vec![Vec::new(); m];
            for (i, e) in order.into_iter().enumerate() {
                parts[i % m].push(e);
            }
            let capacities = (0..m).map(|_| rng.gen_range(1..=2usize)).collect();
            MatroidSpec::Partition { n, parts, capacities }
        }
        2 => {
            let vertices = rng.gen_range((n / 2 + 1).max(2)..=n + 1);
            let edges = (0..n)
                .map(|_| {
                    let u = rng.gen_range(0..vertices);
                    let mut v = rng.gen_range(0..vertices - 1);
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect();
            MatroidSpec::Graphic { vertices, edges }
        }
        _ => {
            let dim = rng.gen_range((n / 2).max(1)..=n.max(1));
            let columns = (0..n)
                .map(|_| {
                    let mut col = vec![0u8; dim];
                    while col.iter().all(|&b| b == 0) {
                        for b in col.iter_mut() {
                            *b = rng.gen_range(0..=1);
                        }
                    }
                    col
                })
                .collect();
            MatroidSpec::Binary { columns }
        }
    }
}

/// Explicit spec realized as the bases of a random structured matroid, so
/// the family is a matroid by construction.
fn explicit_spec(rng: &mut ChaCha8Rng, n: usize) -> MatroidSpec {
    let kind = rng.gen_range(0..4);
    let inner = base_spec(rng, n, kind);
    let m = Matroid::from_spec(&inner).expect("base specs always build");
    let r = m.full_rank();
    let mut bases = Vec::new();
    for mask in crate::intersect::subsets_of_size(n, r) {
        if m.indep(mask) {
            bases.push(ElementSet::from_bits(n, mask).members());
        }
    }
    MatroidSpec::Explicit { n, independent: None, bases: Some(bases) }
}

/// Deterministic suite of matroids with ground sizes cycling through
/// `min_n..=max_n`.
pub fn matroid_suite(
    seed: u64,
    count: usize,
    min_n: usize,
    max_n: usize,
    loopless: bool,
) -> Vec<GeneratedMatroid> {
    assert!(1 <= min_n && min_n <= max_n);
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|i| {
            let n = min_n + i % (max_n - min_n + 1);
            let (spec, matroid) = random_matroid(&mut rng, n, loopless);
            GeneratedMatroid { label: format!("m{i:04}-{}", matroid.describe()), spec, matroid }
        })
        .collect()
}

/// Deterministic suite of dimatroids (pairs on a shared ground set).
pub fn dimatroid_suite(
    seed: u64,
    count: usize,
    min_n: usize,
    max_n: usize,
    loopless: bool,
) -> Vec<GeneratedDimatroid> {
    assert!(1 <= min_n && min_n <= max_n);
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|i| {
            let n = min_n + i % (max_n - min_n + 1);
            let (p_spec, p) = random_matroid(&mut rng, n, loopless);
            let (q_spec, q) = random_matroid(&mut rng, n, loopless);
            let dimatroid = Dimatroid::new(p, q).expect("equal ground sizes by construction");
            GeneratedDimatroid {
                label: format!("d{i:04}-{}|{}", dimatroid.p().describe(), dimatroid.q().describe()),
                p_spec,
                q_spec,
                dimatroid,
            }
        })
        .collect()
}

/// A uniformly random subset of the ground set.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> ElementSet {
    let mask: u64 = rng.gen::<u64>() & crate::set::full_mask(n);
    ElementSet::from_members(n, (0..n).filter(|&e| mask & 1 << e != 0)).unwrap()
}

/// A random partition of `{0..n-1}` into at most `max_blocks` blocks
/// (empty blocks are dropped).
pub fn random_partition_blocks(rng: &mut ChaCha8Rng, n: usize, max_blocks: usize) -> Vec<ElementSet> {
    let m = rng.gen_range(1..=max_blocks.max(1));
    let mut buckets = vec![Vec::new(); m];
    for e in 0..n {
        buckets[rng.gen_range(0..m)].push(e);
    }
    buckets
        .into_iter()
        .filter(|b| !b.is_empty())
        .map(|b| ElementSet::from_members(n, b).unwrap())
        .collect()
}

/// A random common independent set, grown in random order and cut off at a
/// random point.
pub fn random_common_independent(rng: &mut ChaCha8Rng, d: &Dimatroid) -> ElementSet {
    let n = d.ground_size();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut acc = ElementSet::empty(n);
    for e in order {
        if rng.gen_bool(0.8) && d.common(acc.with(e).bits()) {
            acc = acc.with(e);
        }
    }
    acc
}

/// Two random common independent sets trimmed to a common size, as inputs
/// for exchange walks.
pub fn random_common_pair(rng: &mut ChaCha8Rng, d: &Dimatroid) -> (ElementSet, ElementSet) {
    let mut s = random_common_independent(rng, d);
    let mut t = random_common_independent(rng, d);
    while s.len() > t.len() {
        let drop = *s.members().choose(rng).unwrap();
        s = s.without(drop);
    }
    while t.len() > s.len() {
        let drop = *t.members().choose(rng).unwrap();
        t = t.without(drop);
    }
    (s, t)
}

/// A random bipartite graph as `(left, right, edges)` with at most
/// `max_edges` distinct edges; edge `(l, r)` joins left vertex `l` to right
/// vertex `r`.
pub fn random_bipartite_graph(
    rng: &mut ChaCha8Rng,
    max_edges: usize,
) -> (usize, usize, Vec<(usize, usize)>) {
    let left = rng.gen_range(1..=4usize);
    let right = rng.gen_range(1..=4usize);
    let mut all: Vec<(usize, usize)> = (0..left)
        .flat_map(|l| (0..right).map(move |r| (l, r)))
        .collect();
    all.shuffle(rng);
    let want = rng.gen_range(1..=max_edges.min(all.len()).max(1));
    all.truncate(want);
    all.sort_unstable();
    (left, right, all)
}

/// All partitions of `{0..n-1}` into at most `max_blocks` nonempty blocks,
/// in a deterministic order. Exponential; callers cap `n`.
pub fn partitions_up_to(n: usize, max_blocks: usize) -> Vec<Vec<ElementSet>> {
    fn rec(e: usize, n: usize, max_blocks: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<ElementSet>>) {
        if e == n {
            out.push(
                blocks
                    .iter()
                    .map(|b| ElementSet::from_members(n, b.iter().copied()).unwrap())
                    .collect(),
            );
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(e);
            rec(e + 1, n, max_blocks, blocks, out);
            blocks[i].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![e]);
            rec(e + 1, n, max_blocks, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(0, n, max_blocks, &mut Vec::new(), &mut out);
    out
}

/// Kinds accepted by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Uniform,
    Partition,
    Graphic,
    Binary,
    Explicit,
}

/// Parameters for [`generate`]; only the fields a kind uses are read.
#[derive(Clone, Debug, Default)]
pub struct GenParams {
    /// Ground size (uniform, binary, explicit).
    pub n: Option<usize>,
    /// Uniform rank; random when absent.
    pub rank: Option<usize>,
    /// Partition block sizes.
    pub part_sizes: Option<Vec<usize>>,
    /// Partition capacities; all ones when absent.
    pub capacities: Option<Vec<usize>>,
    /// Graphic vertex count.
    pub vertices: Option<usize>,
    /// Graphic edge probability; 0.5 when absent.
    pub edge_probability: Option<f64>,
    /// Binary column length.
    pub dim: Option<usize>,
    /// Redraw until the matroid has no loops.
    pub loopless: bool,
}

/// A reproducible single-matroid instance of the requested kind.
pub fn generate(kind: GenKind, params: &GenParams, seed: u64) -> Result<Instance> {
    let mut rng = rng_from_seed(seed);
    let need = |field: Option<usize>, name: &str| {
        field.ok_or_else(|| Error::InvalidSpec(format!("generate({kind:?}) needs {name}")))
    };
    let spec = match kind {
        GenKind::Uniform => {
            let n = need(params.n, "n")?;
            if n == 0 {
                return Err(Error::EmptyGroundSet);
            }
            let r = match params.rank {
                Some(r) if r <= n => r,
                Some(r) => return Err(Error::InvalidSpec(format!("rank {r} exceeds n={n}"))),
                None => rng.gen_range(if params.loopless { 1 } else { 0 }..=n),
            };
            MatroidSpec::Uniform { n, r }
        }
        GenKind::Partition => {
            let sizes = params
                .part_sizes
                .clone()
                .ok_or_else(|| Error::InvalidSpec("generate(Partition) needs part sizes".into()))?;
            let n: usize = sizes.iter().sum();
            if n == 0 {
                return Err(Error::EmptyGroundSet);
            }
            let capacities = match &params.capacities {
                Some(c) if c.len() == sizes.len() => c.clone(),
                Some(_) => {
                    return Err(Error::InvalidSpec("one capacity per part is required".into()))
                }
                None => vec![1; sizes.len()],
            };
            if params.loopless && capacities.iter().zip(&sizes).any(|(&c, &s)| c == 0 && s > 0) {
                return Err(Error::InvalidSpec(
                    "capacity 0 on a nonempty part makes loops".into(),
                ));
            }
            let mut parts = Vec::new();
            let mut next = 0usize;
            for s in sizes {
                parts.push((next..next + s).collect());
                next += s;
            }
            MatroidSpec::Partition { n, parts, capacities }
        }
        GenKind::Graphic => {
            let vertices = need(params.vertices, "vertices")?;
            let p = params.edge_probability.unwrap_or(0.5);
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidSpec(format!("edge probability {p} outside [0,1]")));
            }
            let mut edges = Vec::new();
            for u in 0..vertices {
                for v in u + 1..vertices {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            if edges.len() > crate::set::MAX_UNIVERSE {
                return Err(Error::TooLarge { n: edges.len(), cap: crate::set::MAX_UNIVERSE });
            }
            MatroidSpec::Graphic { vertices, edges }
        }
        GenKind::Binary => {
            let n = need(params.n, "n")?;
            let dim = need(params.dim, "dim")?;
            if dim == 0 || dim > 64 {
                return Err(Error::InvalidSpec(format!("binary dim {dim} outside 1..=64")));
            }
            let columns = (0..n)
                .map(|_| loop {
                    let col: Vec<u8> = (0..dim).map(|_| rng.gen_range(0..=1)).collect();
                    if !params.loopless || col.iter().any(|&b| b != 0) {
                        return col;
                    }
                })
                .collect();
            MatroidSpec::Binary { columns }
        }
        GenKind::Explicit => {
            let n = need(params.n, "n")?;
            if n == 0 {
                return Err(Error::EmptyGroundSet);
            }
            if n > 10 {
                return Err(Error::TooLarge { n, cap: 10 });
            }
            loop {
                let spec = explicit_spec(&mut rng, n);
                let m = Matroid::from_spec(&spec)?;
                if !params.loopless || m.is_loopless() {
                    break spec;
                }
            }
        }
    };
    let matroid = Matroid::from_spec(&spec)?;
    if params.loopless {
        matroid.require_loopless()?;
    }
    Ok(Instance {
        label: format!("{}-seed{seed}", matroid.describe()),
        p: spec,
        q: None,
        partition: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_deterministic() {
        let a = matroid_suite(42, 10, 3, 6, true);
        let b = matroid_suite(42, 10, 3, 6, true);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.spec, y.spec);
        }
        let c = matroid_suite(43, 10, 3, 6, true);
        assert!(a.iter().zip(&c).any(|(x, y)| x.spec != y.spec));
    }

    #[test]
    fn loopless_suites_have_no_loops() {
        for g in matroid_suite(7, 40, 1, 8, true) {
            assert!(g.matroid.is_loopless(), "{}", g.label);
        }
    }

    #[test]
    fn suite_specs_rebuild() {
        for g in dimatroid_suite(11, 20, 2, 7, false) {
            let p = Matroid::from_spec(&g.p_spec).unwrap();
            assert_eq!(p.ground_size(), g.dimatroid.ground_size());
        }
    }

    #[test]
    fn generate_is_reproducible() {
        let params = GenParams { vertices: Some(5), edge_probability: Some(0.6), ..Default::default() };
        let a = generate(GenKind::Graphic, &params, 1).unwrap();
        let b = generate(GenKind::Graphic, &params, 1).unwrap();
        assert_eq!(a, b);
        let c = generate(GenKind::Graphic, &params, 2).unwrap();
        assert!(a.p != c.p || a.label != c.label);
    }

    #[test]
    fn generate_partition_shape() {
        let params = GenParams {
            part_sizes: Some(vec![2, 2, 2]),
            capacities: Some(vec![1, 1, 1]),
            ..Default::default()
        };
        let inst = generate(GenKind::Partition, &params, 5).unwrap();
        let m = inst.matroid_p().unwrap();
        assert_eq!(m.ground_size(), 6);
        assert_eq!(m.full_rank(), 3);
    }

    #[test]
    fn generate_binary_loopless_has_no_zero_column() {
        let params = GenParams { n: Some(8), dim: Some(4), loopless: true, ..Default::default() };
        let inst = generate(GenKind::Binary, &params, 7).unwrap();
        assert!(inst.matroid_p().unwrap().is_loopless());
    }

    #[test]
    fn partitions_up_to_counts() {
        // Bell-style counts for blocks <= 2: 2^(n-1).
        assert_eq!(partitions_up_to(4, 2).len(), 8);
        assert_eq!(partitions_up_to(3, 3).len(), 5);
        assert_eq!(partitions_up_to(0, 3).len(), 1);
        for part in partitions_up_to(5, 3) {
            let total: usize = part.iter().map(ElementSet::len).sum();
            assert_eq!(total, 5);
        }
    }

    #[test]
    fn random_common_pairs_are_valid() {
        let mut rng = rng_from_seed(3);
        for g in dimatroid_suite(9, 10, 2, 8, false) {
            let (s, t) = random_common_pair(&mut rng, &g.dimatroid);
            assert_eq!(s.len(), t.len());
            assert!(g.dimatroid.is_common_independent(&s).unwrap());
            assert!(g.dimatroid.is_common_independent(&t).unwrap());
        }
    }
}
