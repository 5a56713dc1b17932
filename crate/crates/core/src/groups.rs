//! Small finite permutation groups: enumeration, conjugacy classes, normal
//! subgroups, quotients, composition series and Jordan–Hölder factors.
//!
//! Groups are enumerated eagerly and are immutable afterwards. Elements are
//! kept sorted, so "lexicographically smallest subgroup" is well defined and
//! every output is reproducible.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Below this order, a simple group is determined up to isomorphism by its
/// order (the first collision is A8 vs PSL(3,4), both of order 20160).
pub const FACTOR_ORDER_LIMIT: u64 = 20160;

/// Groups up to this order get a full multiplication table of element
/// indices (4 bytes per entry) the first time one is needed.
const TABLE_ORDER_LIMIT: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group has more than {0} elements")]
    CapExceeded(usize),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<u32>),
    #[error("permutation of degree {got} used in a group of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("composition factor of order {0} is too large to identify by order")]
    OrderTooLarge(u64),
    #[error("class function has {got} values, group has {expected} classes")]
    ClassMismatch { expected: usize, got: usize },
    #[error("unknown group name {0:?}; expected C<n>, D<n>, A<n> or S<n>")]
    UnknownGroup(String),
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || std::mem::replace(&mut seen[i as usize], true) {
                return Err(GroupError::InvalidPermutation(images));
            }
        }
        Ok(Perm(images.into()))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from as usize >= n || to as usize >= n {
                    return Err(GroupError::InvalidPermutation(cycle.to_vec()));
                }
                images[from as usize] = to;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv.into())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }

    /// Disjoint cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32);
                i = self.0[i] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite permutation group with its full, sorted element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    cap: usize,
    /// Row-major `i * order + j -> index of elements[i] ∘ elements[j]`.
    table: OnceLock<Option<Box<[u32]>>>,
}

impl PermGroup {
    /// Enumerates `<generators>` breadth-first; fails once the closure
    /// exceeds `cap` elements.
    pub fn from_generators(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self, GroupError> {
        let degree = degree.max(1);
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded(cap));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::assemble(degree, generators, elements, cap))
    }

    fn assemble(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>, cap: usize) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self {
            degree,
            generators,
            elements,
            index,
            cap,
            table: OnceLock::new(),
        }
    }

    /// Wraps an already closed, sorted element set (a subgroup of some other
    /// group) and picks a small generating set greedily.
    fn from_closed_elements(degree: usize, elements: Vec<Perm>, cap: usize) -> Self {
        let shell = Self::assemble(degree, Vec::new(), elements, cap);
        let all: Vec<usize> = (0..shell.order()).collect();
        let (_, gens) = shell.generate(&[], &all);
        let generators = gens.into_iter().map(|i| shell.elements[i].clone()).collect();
        Self {
            generators,
            table: OnceLock::new(),
            ..shell
        }
    }

    pub fn trivial(degree: usize) -> Self {
        let degree = degree.max(1);
        Self::assemble(degree, Vec::new(), vec![Perm::identity(degree)], DEFAULT_ELEMENT_CAP)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// All elements in ascending order; the identity comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    fn mul_idx(&self, i: usize, j: usize) -> usize {
        match self.table() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&self.elements[i].compose(&self.elements[j])],
        }
    }

    /// Index of `elements[x]^-1`.
    fn inv_idx(&self, x: usize) -> usize {
        self.index[&self.elements[x].inverse()]
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                // a shell without generators (see `from_closed_elements`)
                // cannot seed the table
                let usable = self.order() <= TABLE_ORDER_LIMIT
                    && (self.order() == 1 || !self.generators.is_empty());
                usable.then(|| self.build_table())
            })
            .as_deref()
    }

    /// Fills the table from a breadth-first spanning tree of the Cayley graph:
    /// if `y = p ∘ s` for a generator `s` then `x ∘ y = (x ∘ p) ∘ s`, so each
    /// entry costs one lookup in a right-multiplication table.
    fn build_table(&self) -> Box<[u32]> {
        let n = self.order();
        let right: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|s| (0..n).map(|x| self.index[&self.elements[x].compose(s)] as u32).collect())
            .collect();
        // identity is the smallest permutation, hence index 0
        let mut parent = vec![(0usize, 0usize); n];
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut tree_order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0usize]);
        while let Some(y) = queue.pop_front() {
            for (k, r) in right.iter().enumerate() {
                let z = r[y] as usize;
                if !visited[z] {
                    visited[z] = true;
                    parent[z] = (y, k);
                    tree_order.push(z);
                    queue.push_back(z);
                }
            }
        }
        debug_assert_eq!(tree_order.len() + 1, n, "generators must generate the element set");
        let mut table = vec![0u32; n * n].into_boxed_slice();
        for x in 0..n {
            let row = &mut table[x * n..(x + 1) * n];
            row[0] = x as u32;
            for &y in &tree_order {
                let (p, k) = parent[y];
                row[y] = right[k][row[p] as usize];
            }
        }
        table
    }

    /// Indices of the generators.
    fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    fn idx(&self, p: &Perm) -> Result<usize, GroupError> {
        self.index.get(p).copied().ok_or(GroupError::NotASubgroup)
    }

    /// Subgroup generated by `base_gens` plus `extra`, as an element bitmap.
    /// Returns the pruned generator list (each generator lies outside the
    /// subgroup generated by its predecessors).
    fn generate(&self, base_gens: &[usize], extra: &[usize]) -> (Vec<bool>, Vec<usize>) {
        let mut gens: Vec<usize> = Vec::new();
        let mut members = vec![false; self.order()];
        members[0] = true;
        for &g in base_gens.iter().chain(extra) {
            if members[g] {
                continue;
            }
            gens.push(g);
            let mut queue: VecDeque<usize> = (0..self.order()).filter(|&i| members[i]).collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul_idx(x, s);
                    if !members[y] {
                        members[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        (members, gens)
    }

    fn indices_of(&self, members: &[bool]) -> Vec<usize> {
        members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()
    }

    fn subset_to_indices(&self, h: &[Perm]) -> Result<Vec<usize>, GroupError> {
        let mut idx = h.iter().map(|p| self.idx(p)).collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    fn check_subgroup(&self, idx: &[usize]) -> Result<(), GroupError> {
        if idx.first() != Some(&0) {
            return Err(GroupError::NotASubgroup);
        }
        let set: HashSet<usize> = idx.iter().copied().collect();
        for &a in idx {
            for &b in idx {
                if !set.contains(&self.mul_idx(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(())
    }

    fn is_normal_idx(&self, idx: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &h in idx {
            member[h] = true;
        }
        self.generator_indices().into_iter().all(|g| {
            let gi = self.inv_idx(g);
            idx.iter().all(|&h| member[self.mul_idx(self.mul_idx(g, h), gi)])
        })
    }

    fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let conj: Vec<(usize, usize)> =
            self.generator_indices().into_iter().map(|g| (g, self.inv_idx(g))).collect();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(g, gi) in &conj {
                    let y = self.mul_idx(self.mul_idx(g, x), gi);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    fn normal_subgroup_indices(&self) -> Vec<Vec<usize>> {
        let classes = self.class_indices();
        let trivial = vec![true]
            .into_iter()
            .chain(std::iter::repeat_n(false, self.order() - 1))
            .collect::<Vec<bool>>();
        // normal closures of single classes, without repeats
        let mut closures: Vec<Vec<usize>> = Vec::new();
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        for class in classes.iter().skip(1) {
            let (members, gens) = self.generate(&[], class);
            if seen.insert(members) {
                closures.push(gens);
            }
        }
        let mut seen: HashSet<Vec<bool>> = HashSet::from([trivial.clone()]);
        let mut found: Vec<(Vec<bool>, Vec<usize>)> = vec![(trivial, Vec::new())];
        let mut cursor = 0;
        // every normal subgroup is the join of the closures of its classes,
        // so it is reached by adding those closures one at a time
        while cursor < found.len() {
            let (members, gens) = found[cursor].clone();
            cursor += 1;
            for closure in &closures {
                if closure.iter().all(|&c| members[c]) {
                    continue;
                }
                let (next, next_gens) = self.generate(&gens, closure);
                if seen.insert(next.clone()) {
                    found.push((next, next_gens));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.iter().map(|(m, _)| self.indices_of(m)).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn to_perms(&self, idx: &[usize]) -> Vec<Perm> {
        idx.iter().map(|&i| self.elements[i].clone()).collect()
    }

    fn subgroup(&self, idx: &[usize]) -> PermGroup {
        PermGroup::from_closed_elements(self.degree, self.to_perms(idx), self.cap)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

pub fn make_cyclic(n: usize) -> Result<PermGroup, GroupError> {
    make_cyclic_with_cap(n, DEFAULT_ELEMENT_CAP)
}

/// `C_n` generated by the n-cycle `(0 1 ... n-1)`.
pub fn make_cyclic_with_cap(n: usize, cap: usize) -> Result<PermGroup, GroupError> {
    let n = n.max(1);
    let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::from_generators(n, vec![Perm::from_images(cycle)?], cap)
}

pub fn make_dihedral(n: usize) -> Result<PermGroup, GroupError> {
    make_dihedral_with_cap(n, DEFAULT_ELEMENT_CAP)
}

/// `D_n`, the symmetries of a regular n-gon (order `2n`), acting on its
/// vertices for `n >= 3`. `D_1` and `D_2` have no faithful action on `n`
/// points; they are realised as `C_2` on 2 points and the Klein four-group
/// on 4 points.
pub fn make_dihedral_with_cap(n: usize, cap: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 | 1 => make_cyclic_with_cap(2, cap),
        2 => PermGroup::from_generators(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
            cap,
        ),
        _ => {
            let m = n as u32;
            let rotation = Perm::from_images((0..m).map(|i| (i + 1) % m).collect())?;
            let reflection = Perm::from_images((0..m).map(|i| (m - i) % m).collect())?;
            PermGroup::from_generators(n, vec![rotation, reflection], cap)
        }
    }
}

pub fn make_alternating(n: usize) -> Result<PermGroup, GroupError> {
    make_alternating_with_cap(n, DEFAULT_ELEMENT_CAP)
}

/// `A_n` generated by the 3-cycles `(0 1 k)`.
pub fn make_alternating_with_cap(n: usize, cap: usize) -> Result<PermGroup, GroupError> {
    let n = n.max(1);
    let gens = (2..n as u32)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::from_generators(n, gens, cap)
}

pub fn make_symmetric(n: usize) -> Result<PermGroup, GroupError> {
    make_symmetric_with_cap(n, DEFAULT_ELEMENT_CAP)
}

/// `S_n` generated by adjacent transpositions.
pub fn make_symmetric_with_cap(n: usize, cap: usize) -> Result<PermGroup, GroupError> {
    let n = n.max(1);
    let gens = (0..n.saturating_sub(1) as u32)
        .map(|i| Perm::from_cycles(n, &[&[i, i + 1]]))
        .collect::<Result<Vec<_>, _>>()?;
    PermGroup::from_generators(n, gens, cap)
}

/// Parses `C12`, `D5`, `A5`, `S4` (case-insensitive family letter).
pub fn group_by_name(name: &str, cap: usize) -> Result<PermGroup, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.to_string());
    let mut chars = name.trim().chars();
    let family = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    match family {
        'C' => make_cyclic_with_cap(n, cap),
        'D' => make_dihedral_with_cap(n, cap),
        'A' => make_alternating_with_cap(n, cap),
        'S' => make_symmetric_with_cap(n, cap),
        _ => Err(unknown()),
    }
}

/// The full element list (already enumerated at construction).
pub fn enumerate(g: &PermGroup) -> &[Perm] {
    g.elements()
}

/// A conjugacy class: its smallest member and all members in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Classes ordered by representative; the identity class comes first.
pub fn conjugacy_classes(g: &PermGroup) -> Vec<ConjClass> {
    g.class_indices()
        .into_iter()
        .map(|idx| {
            let members = g.to_perms(&idx);
            ConjClass {
                representative: members[0].clone(),
                members,
            }
        })
        .collect()
}

/// Whether the subgroup `h` of `g` is normal (`g h g^-1 = h` for every
/// generator `g`).
pub fn is_normal(h: &[Perm], g: &PermGroup) -> Result<bool, GroupError> {
    let idx = g.subset_to_indices(h)?;
    g.check_subgroup(&idx)?;
    Ok(g.is_normal_idx(&idx))
}

/// All normal subgroups as sorted element lists, ordered by size and then
/// lexicographically.
///
/// Normal subgroups are exactly the subgroups generated by unions of
/// conjugacy classes; they are found by closing `{e}` under "join with the
/// normal closure of one more class".
pub fn normal_subgroups(g: &PermGroup) -> Vec<Vec<Perm>> {
    g.normal_subgroup_indices()
        .iter()
        .map(|idx| g.to_perms(idx))
        .collect()
}

/// `G/N` realised by the action of `G`'s generators on the left cosets of `N`.
/// Cosets are numbered by their smallest element.
pub fn quotient_group(g: &PermGroup, n: &[Perm]) -> Result<PermGroup, GroupError> {
    let idx = g.subset_to_indices(n)?;
    g.check_subgroup(&idx)?;
    if !g.is_normal_idx(&idx) {
        return Err(GroupError::NotNormal);
    }
    quotient_by_indices(g, &idx)
}

fn quotient_by_indices(g: &PermGroup, n_idx: &[usize]) -> Result<PermGroup, GroupError> {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut count = 0usize;
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &h in n_idx {
            coset_of[g.mul_idx(x, h)] = count;
        }
        count += 1;
    }
    let mut reps = vec![usize::MAX; count];
    for (x, &c) in coset_of.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    let gens = g
        .generators
        .iter()
        .map(|s| {
            let si = g.index[s];
            let images = reps.iter().map(|&r| coset_of[g.mul_idx(si, r)] as u32).collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let q = PermGroup::from_generators(count, gens, g.cap)?;
    debug_assert_eq!(q.order() * n_idx.len(), g.order());
    Ok(q)
}

/// True iff `g` has exactly two normal subgroups (so the trivial group is not
/// simple).
pub fn is_simple(g: &PermGroup) -> bool {
    g.order() > 1 && g.normal_subgroup_indices().len() == 2
}

/// Isomorphism-type proxy for a composition factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorDescriptor {
    pub order: u64,
    pub is_abelian: bool,
    pub is_simple: bool,
}

impl FactorDescriptor {
    pub fn of(q: &PermGroup) -> Self {
        Self {
            order: q.order() as u64,
            is_abelian: q.is_abelian(),
            is_simple: is_simple(q),
        }
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.order)?;
        if !self.is_abelian {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// `{e} = G_0 ⊴ G_1 ⊴ ... ⊴ G_n = G` with simple factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupChain {
    pub subgroups: Vec<Vec<Perm>>,
    pub factors: Vec<FactorDescriptor>,
}

impl SubgroupChain {
    pub fn orders(&self) -> Vec<usize> {
        self.subgroups.iter().map(Vec::len).collect()
    }

    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn maximal_normal_indices(g: &PermGroup) -> Vec<Vec<usize>> {
    let normals = g.normal_subgroup_indices();
    let proper: Vec<&Vec<usize>> = normals.iter().filter(|n| n.len() < g.order()).collect();
    proper
        .iter()
        .filter(|n| {
            let set: HashSet<usize> = n.iter().copied().collect();
            !proper
                .iter()
                .any(|m| m.len() > n.len() && set.iter().all(|x| m.binary_search(x).is_ok()))
        })
        .map(|n| (*n).clone())
        .collect()
}

/// A composition series chosen deterministically: at each step take, among
/// the proper normal subgroups of largest order, the lexicographically
/// smallest element set. The chain is checked before it is returned.
pub fn composition_series(g: &PermGroup) -> Result<SubgroupChain, GroupError> {
    let mut top_down: Vec<PermGroup> = vec![g.clone()];
    loop {
        let current = top_down.last().expect("nonempty");
        if current.order() == 1 {
            break;
        }
        let normals = current.normal_subgroup_indices();
        let best = normals
            .iter()
            .filter(|n| n.len() < current.order())
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
            .expect("trivial subgroup is always proper here");
        let next = current.subgroup(best);
        top_down.push(next);
    }
    top_down.reverse();
    let mut factors = Vec::new();
    for pair in top_down.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        let idx = upper.subset_to_indices(lower.elements())?;
        if !upper.is_normal_idx(&idx) {
            return Err(GroupError::NotNormal);
        }
        let factor = FactorDescriptor::of(&quotient_by_indices(upper, &idx)?);
        debug_assert!(factor.is_simple, "factor of a maximal normal subgroup must be simple");
        factors.push(factor);
    }
    Ok(SubgroupChain {
        subgroups: top_down.into_iter().map(|h| h.elements).collect(),
        factors,
    })
}

/// The factor multiset (sorted) of the deterministic composition series.
pub fn jordan_holder_factors(g: &PermGroup) -> Result<Vec<FactorDescriptor>, GroupError> {
    let mut factors = composition_series(g)?.factors;
    if let Some(big) = factors.iter().find(|f| f.order >= FACTOR_ORDER_LIMIT) {
        return Err(GroupError::OrderTooLarge(big.order));
    }
    factors.sort();
    Ok(factors)
}

/// Summary of every composition series of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCensus {
    pub series_count: BigUint,
    pub factor_multisets: BTreeSet<Vec<FactorDescriptor>>,
}

/// Walks every composition series (every choice of maximal normal subgroup
/// at every level) and collects the distinct factor multisets. Subgroups are
/// memoized by element set, so shared tails are explored once.
pub fn composition_census(g: &PermGroup) -> SeriesCensus {
    let mut memo: HashMap<Vec<Perm>, SeriesCensus> = HashMap::new();
    census_rec(g, &mut memo)
}

fn census_rec(g: &PermGroup, memo: &mut HashMap<Vec<Perm>, SeriesCensus>) -> SeriesCensus {
    if let Some(c) = memo.get(&g.elements) {
        return c.clone();
    }
    let result = if g.order() == 1 {
        SeriesCensus {
            series_count: BigUint::one(),
            factor_multisets: BTreeSet::from([Vec::new()]),
        }
    } else {
        let mut series_count = BigUint::zero();
        let mut factor_multisets = BTreeSet::new();
        for n_idx in maximal_normal_indices(g) {
            let factor = FactorDescriptor::of(
                &quotient_by_indices(g, &n_idx).expect("normal subgroup quotient"),
            );
            let sub = census_rec(&g.subgroup(&n_idx), memo);
            series_count += &sub.series_count;
            for ms in sub.factor_multisets {
                let mut ms = ms;
                ms.push(factor);
                ms.sort();
                factor_multisets.insert(ms);
            }
        }
        SeriesCensus {
            series_count,
            factor_multisets,
        }
    };
    memo.insert(g.elements.clone(), result.clone());
    result
}

/// Rational-valued function on the conjugacy classes of a group, indexed in
/// the order of [`conjugacy_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Self::new(values.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
    }

    pub fn trivial(g: &PermGroup) -> Self {
        Self::from_integers(conjugacy_classes(g).iter().map(|_| 1))
    }

    /// Characteristic function of class number `i`.
    pub fn indicator(g: &PermGroup, i: usize) -> Self {
        Self::from_integers((0..conjugacy_classes(g).len()).map(|j| i64::from(i == j)))
    }
}

/// `<phi, psi> = (1/|G|) sum_C |C| phi(C) psi(C)` for rational-valued class
/// functions (complex conjugation is trivial on them).
pub fn class_fn_inner(phi: &ClassFunction, psi: &ClassFunction, g: &PermGroup) -> Result<BigRational, GroupError> {
    let classes = conjugacy_classes(g);
    for f in [phi, psi] {
        if f.values.len() != classes.len() {
            return Err(GroupError::ClassMismatch {
                expected: classes.len(),
                got: f.values.len(),
            });
        }
    }
    let total: BigRational = classes
        .iter()
        .zip(phi.values.iter().zip(&psi.values))
        .map(|(c, (a, b))| BigRational::from_integer(BigInt::from(c.size())) * a * b)
        .sum();
    Ok(total / BigRational::from_integer(BigInt::from(g.order())))
}

/// Fixed-point count of each class representative in the natural action.
pub fn permutation_character(g: &PermGroup) -> ClassFunction {
    ClassFunction::from_integers(
        conjugacy_classes(g)
            .iter()
            .map(|c| c.representative.fixed_points() as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(g: &PermGroup) -> Vec<usize> {
        let mut s: Vec<usize> = conjugacy_classes(g).iter().map(ConjClass::size).collect();
        s.sort_unstable();
        s
    }

    fn orders(fs: &[FactorDescriptor]) -> Vec<u64> {
        fs.iter().map(|f| f.order).collect()
    }

    #[test]
    fn perm_basics() {
        let p = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p.to_string(), "(0 1 2)");
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.fixed_points(), 1);
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn constructor_orders() {
        assert_eq!(make_cyclic(12).unwrap().order(), 12);
        assert_eq!(make_dihedral(5).unwrap().order(), 10);
        assert_eq!(make_alternating(5).unwrap().order(), 60);
        assert_eq!(make_symmetric(4).unwrap().order(), 24);
        assert_eq!(make_cyclic(7).unwrap().order(), 7);
        assert_eq!(make_dihedral(2).unwrap().order(), 4);
        assert_eq!(make_dihedral(1).unwrap().order(), 2);
        let t = PermGroup::from_generators(1, vec![], DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(t.elements(), &[Perm::identity(1)]);
    }

    #[test]
    fn cap_enforced() {
        assert_eq!(make_symmetric_with_cap(5, 100), Err(GroupError::CapExceeded(100)));
        assert_eq!(make_symmetric_with_cap(5, 120).unwrap().order(), 120);
    }

    #[test]
    fn names() {
        assert_eq!(group_by_name("C12", 1000).unwrap().order(), 12);
        assert_eq!(group_by_name("s4", 1000).unwrap().order(), 24);
        assert!(matches!(group_by_name("X3", 1000), Err(GroupError::UnknownGroup(_))));
        assert!(matches!(group_by_name("C", 1000), Err(GroupError::UnknownGroup(_))));
    }

    #[test]
    fn class_examples() {
        assert_eq!(sizes(&make_cyclic(9).unwrap()), vec![1; 9]);
        assert_eq!(sizes(&make_symmetric(3).unwrap()), vec![1, 2, 3]);
        assert_eq!(sizes(&make_alternating(5).unwrap()), vec![1, 12, 12, 15, 20]);
        let classes = conjugacy_classes(&make_symmetric(4).unwrap());
        assert!(classes[0].representative.is_identity());
        assert_eq!(classes[0].size(), 1);
    }

    #[test]
    fn normality() {
        let d5 = make_dihedral(5).unwrap();
        let e = vec![Perm::identity(5)];
        assert!(is_normal(&e, &d5).unwrap());
        assert!(is_normal(d5.elements(), &d5).unwrap());
        let r = Perm::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        assert!(!is_normal(&[Perm::identity(5), r.clone()], &d5).unwrap());
        assert_eq!(is_normal(&[r], &d5), Err(GroupError::NotASubgroup));
    }

    #[test]
    fn normal_subgroup_examples() {
        let a5 = normal_subgroups(&make_alternating(5).unwrap());
        assert_eq!(a5.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 60]);
        let c12 = normal_subgroups(&make_cyclic(12).unwrap());
        assert_eq!(c12.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 3, 4, 6, 12]);
        let s3 = normal_subgroups(&make_symmetric(3).unwrap());
        assert_eq!(s3.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 6]);
        let s4 = normal_subgroups(&make_symmetric(4).unwrap());
        assert_eq!(s4.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 4, 12, 24]);
    }

    #[test]
    fn quotients() {
        let c12 = make_cyclic(12).unwrap();
        let e = vec![Perm::identity(12)];
        assert_eq!(quotient_group(&c12, &e).unwrap().order(), 12);
        assert_eq!(quotient_group(&c12, c12.elements()).unwrap().order(), 1);
        let c3 = normal_subgroups(&c12).into_iter().find(|n| n.len() == 3).unwrap();
        let q = quotient_group(&c12, &c3).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        let d5 = make_dihedral(5).unwrap();
        let r = Perm::from_images(vec![0, 4, 3, 2, 1]).unwrap();
        assert_eq!(
            quotient_group(&d5, &[Perm::identity(5), r]),
            Err(GroupError::NotNormal)
        );
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&make_alternating(5).unwrap()));
        assert!(is_simple(&make_cyclic(7).unwrap()));
        assert!(!is_simple(&make_cyclic(12).unwrap()));
        assert!(!is_simple(&PermGroup::trivial(1)));
        assert!(!is_simple(&make_alternating(4).unwrap()));
    }

    #[test]
    fn series_examples() {
        let c12 = composition_series(&make_cyclic(12).unwrap()).unwrap();
        assert_eq!(c12.len(), 3);
        let mut fo = c12.factor_orders();
        fo.sort_unstable();
        assert_eq!(fo, vec![2, 2, 3]);
        assert_eq!(c12.orders()[0], 1);
        assert_eq!(*c12.orders().last().unwrap(), 12);

        let t = composition_series(&PermGroup::trivial(1)).unwrap();
        assert_eq!(t.orders(), vec![1]);
        assert!(t.is_empty());

        let s4 = jordan_holder_factors(&make_symmetric(4).unwrap()).unwrap();
        assert_eq!(orders(&s4), vec![2, 2, 2, 3]);
        assert_eq!(composition_series(&make_symmetric(4).unwrap()).unwrap().orders(), vec![1, 2, 4, 12, 24]);
    }

    #[test]
    fn jordan_holder_examples() {
        assert_eq!(orders(&jordan_holder_factors(&make_cyclic(12).unwrap()).unwrap()), vec![2, 2, 3]);
        let d5 = jordan_holder_factors(&make_dihedral(5).unwrap()).unwrap();
        let c10 = jordan_holder_factors(&make_cyclic(10).unwrap()).unwrap();
        assert_eq!(d5, c10);
        assert_eq!(orders(&d5), vec![2, 5]);
        let a5 = jordan_holder_factors(&make_alternating(5).unwrap()).unwrap();
        assert_eq!(
            a5,
            vec![FactorDescriptor { order: 60, is_abelian: false, is_simple: true }]
        );
    }

    #[test]
    fn census_of_c12() {
        let c = composition_census(&make_cyclic(12).unwrap());
        assert_eq!(c.series_count, BigUint::from(3u32));
        assert_eq!(c.factor_multisets.len(), 1);
    }

    #[test]
    fn inner_products() {
        let s3 = make_symmetric(3).unwrap();
        let one = ClassFunction::trivial(&s3);
        assert_eq!(class_fn_inner(&one, &one, &s3).unwrap(), BigRational::one());
        let c1 = ClassFunction::indicator(&s3, 1);
        let c2 = ClassFunction::indicator(&s3, 2);
        assert!(class_fn_inner(&c1, &c2, &s3).unwrap().is_zero());
        let chi = permutation_character(&s3);
        assert_eq!(class_fn_inner(&chi, &one, &s3).unwrap(), BigRational::one());
        let short = ClassFunction::from_integers([1]);
        assert_eq!(
            class_fn_inner(&short, &one, &s3),
            Err(GroupError::ClassMismatch { expected: 3, got: 1 })
        );
    }

    #[test]
    fn permutation_character_values() {
        let s3 = make_symmetric(3).unwrap();
        let classes = conjugacy_classes(&s3);
        let chi = permutation_character(&s3);
        for (c, v) in classes.iter().zip(&chi.values) {
            let want = match c.representative.cycles().first().map(Vec::len) {
                None => 3,
                Some(2) => 1,
                Some(3) => 0,
                _ => unreachable!(),
            };
            assert_eq!(*v, BigRational::from_integer(want.into()));
        }
    }
}
