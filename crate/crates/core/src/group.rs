//! Finite groups as dense multiplication tables, their subgroups, set
//! products and coset spaces.
//!
//! Element `0` is always the identity. Every coset space uses the smallest
//! element index of a block as its representative and lists blocks in
//! increasing order of representative, so all derived data is deterministic.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 20_000;

/// Where a group comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    /// Explicit Cayley table; `mul[x][y]` is the index of `x * y`.
    Table { mul: Vec<Vec<usize>> },
    /// Permutations of `0..degree`, given by their image arrays.
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    Builtin(Family),
}

/// Builtin families of small groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    /// Quaternion group; the parameter must be 8.
    Quaternion(usize),
    /// `{(b, a) : a in (Z/n)^*, b in Z/n}` with the product of the
    /// upper-triangular matrices `[[1, b], [0, a]]`.
    AffineMod(usize),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cyclic(_) => "cyclic",
            Family::Dihedral(_) => "dihedral",
            Family::Symmetric(_) => "symmetric",
            Family::Quaternion(_) => "quaternion",
            Family::AffineMod(_) => "affine_mod",
        }
    }

    pub fn param(&self) -> usize {
        match *self {
            Family::Cyclic(n)
            | Family::Dihedral(n)
            | Family::Symmetric(n)
            | Family::Quaternion(n)
            | Family::AffineMod(n) => n,
        }
    }

    pub fn from_name(name: &str, param: usize) -> Result<Family> {
        Ok(match name {
            "cyclic" => Family::Cyclic(param),
            "dihedral" => Family::Dihedral(param),
            "symmetric" => Family::Symmetric(param),
            "quaternion" => Family::Quaternion(param),
            "affine_mod" => Family::AffineMod(param),
            other => return Err(Error::Parse(format!("unknown builtin family {other:?}"))),
        })
    }

    /// Order of the group without building it.
    pub fn order(&self) -> usize {
        match *self {
            Family::Cyclic(n) => n,
            Family::Dihedral(n) => 2 * n,
            Family::Symmetric(n) => (1..=n).product(),
            Family::Quaternion(_) => 8,
            Family::AffineMod(n) => n * units_mod(n).len(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.param())
    }
}

fn units_mod(n: usize) -> Vec<usize> {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// A validated finite group.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("order", &self.order).finish()
    }
}

impl GroupTable {
    pub fn build(source: &GroupSource, max_order: usize) -> Result<GroupTable> {
        match source {
            GroupSource::Table { mul } => {
                if mul.len() > max_order {
                    return Err(Error::OrderCapExceeded { cap: max_order });
                }
                GroupTable::from_table(mul, None)
            }
            GroupSource::Permutations { degree, generators } => {
                GroupTable::from_permutations(*degree, generators, max_order)
            }
            GroupSource::Builtin(family) => GroupTable::builtin(*family, max_order),
        }
    }

    /// Validates a Cayley table. If the identity is not at index 0 the
    /// identity and element 0 swap places.
    pub fn from_table(mul: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<GroupTable> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} is not closed")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        // relabel so the identity sits at 0
        let perm: Vec<usize> = (0..n)
            .map(|i| match i {
                0 => identity,
                i if i == identity => 0,
                i => i,
            })
            .collect();
        let mut flat = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                flat[x * n + y] = perm[mul[perm[x]][perm[y]]] as u32;
            }
        }
        let labels = labels.map(|l| (0..n).map(|i| l[perm[i]].clone()).collect());
        GroupTable::from_flat(n, flat, labels)
    }

    fn from_flat(n: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<GroupTable> {
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            match row.iter().position(|&v| v == 0) {
                Some(y) if mul[y * n + x] == 0 => inv[x] = y as u32,
                _ => return Err(Error::InvalidGroup(format!("element {x} has no inverse"))),
            }
        }
        let g = GroupTable { order: n, mul, inv, labels };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let bad = crate::par::find_first(n, |x| {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((y, z));
                    }
                }
            }
            None
        });
        match bad {
            None => Ok(()),
            Some((x, (y, z))) => Err(Error::InvalidGroup(format!(
                "not associative at ({x}, {y}, {z})"
            ))),
        }
    }

    /// Closes a set of elements of some ambient group under `op`. The
    /// identity must be `elements[0]`.
    fn from_closure<E, F>(
        seed: Vec<E>,
        generators: &[E],
        op: F,
        label: impl Fn(&E) -> String,
        max_order: usize,
    ) -> Result<GroupTable>
    where
        E: Clone + Eq + Hash,
        F: Fn(&E, &E) -> E,
    {
        let mut elements = seed;
        let mut index: HashMap<E, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p = op(&elements[i], g);
                if !index.contains_key(&p) {
                    if elements.len() >= max_order {
                        return Err(Error::OrderCapExceeded { cap: max_order });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = op(&elements[x], &elements[y]);
                let &k = index
                    .get(&p)
                    .ok_or_else(|| Error::InvalidGroup("product escapes the closure".into()))?;
                mul[x * n + y] = k as u32;
            }
        }
        let labels = elements.iter().map(label).collect();
        GroupTable::from_flat(n, mul, Some(labels))
    }

    /// Group generated by permutations of `0..degree`. The product `x * y`
    /// applies `x` first, then `y`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        max_order: usize,
    ) -> Result<GroupTable> {
        for (k, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {k} has {} images for degree {degree}",
                    g.len()
                )));
            }
            for &v in g {
                if v >= degree || seen[v] {
                    return Err(Error::InvalidGroup(format!("generator {k} is not a bijection")));
                }
                seen[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        GroupTable::from_closure(vec![identity], generators, compose, |p| cycle_label(p), max_order)
    }

    pub fn builtin(family: Family, max_order: usize) -> Result<GroupTable> {
        let n = family.param();
        let bad = |why: &str| Err(Error::InvalidGroup(format!("{family}: {why}")));
        match family {
            Family::Quaternion(p) if p != 8 => return bad("only order 8 is available"),
            Family::Symmetric(p) if p > 4 => return bad("degree must be at most 4"),
            _ if n < 1 => return bad("parameter must be at least 1"),
            _ => {}
        }
        if family.order() > max_order {
            return Err(Error::OrderCapExceeded { cap: max_order });
        }
        match family {
            Family::Cyclic(n) => {
                let elems: Vec<usize> = (0..n).collect();
                GroupTable::from_closure(
                    elems,
                    &[],
                    |a, b| (a + b) % n,
                    |&a| match a {
                        0 => "1".to_string(),
                        1 => "a".to_string(),
                        k => format!("a^{k}"),
                    },
                    max_order,
                )
            }
            Family::Dihedral(n) => {
                // (j, i) stands for s^j r^i
                let elems: Vec<(usize, usize)> =
                    (0..2).flat_map(|j| (0..n).map(move |i| (j, i))).collect();
                GroupTable::from_closure(
                    elems,
                    &[],
                    |&(a, i), &(b, k)| {
                        let i = if b == 1 { (n - i) % n } else { i };
                        ((a + b) % 2, (i + k) % n)
                    },
                    |&(j, i)| {
                        let r = match i {
                            0 => String::new(),
                            1 => "r".to_string(),
                            k => format!("r^{k}"),
                        };
                        match (j, r.is_empty()) {
                            (0, true) => "1".to_string(),
                            (0, false) => r,
                            _ => format!("s{r}"),
                        }
                    },
                    max_order,
                )
            }
            Family::Symmetric(n) => {
                let mut perms = permutations(n);
                perms.sort();
                GroupTable::from_closure(perms, &[], compose, |p| cycle_label(p), max_order)
            }
            Family::Quaternion(_) => {
                // (sign, unit) with unit 0..4 = 1, i, j, k
                const UNIT: [[(bool, usize); 4]; 4] = [
                    [(false, 0), (false, 1), (false, 2), (false, 3)],
                    [(false, 1), (true, 0), (false, 3), (true, 2)],
                    [(false, 2), (true, 3), (true, 0), (false, 1)],
                    [(false, 3), (false, 2), (true, 1), (true, 0)],
                ];
                let elems: Vec<(bool, usize)> =
                    (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
                GroupTable::from_closure(
                    elems,
                    &[],
                    |&(s1, u1), &(s2, u2)| {
                        let (s, u) = UNIT[u1][u2];
                        (s ^ s1 ^ s2, u)
                    },
                    |&(s, u)| format!("{}{}", if s { "-" } else { "" }, ["1", "i", "j", "k"][u]),
                    max_order,
                )
            }
            Family::AffineMod(n) => {
                // (b, a) stands for [[1, b], [0, a]]; a = 1 first puts the identity at 0
                let elems: Vec<(usize, usize)> = units_mod(n)
                    .into_iter()
                    .flat_map(|a| (0..n).map(move |b| (b, a)))
                    .collect();
                let elems = if n == 1 { vec![(0, 0)] } else { elems };
                GroupTable::from_closure(
                    elems,
                    &[],
                    |&(b1, a1), &(b2, a2)| ((b2 + b1 * a2) % n, (a1 * a2) % n),
                    |&(b, a)| format!("({b},{a})"),
                    max_order,
                )
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub const fn identity(&self) -> usize {
        0
    }

    /// `x^{-1} g x`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("g{x}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, order: self.order })
        }
    }

    /// Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }
}

fn compose(x: &Vec<usize>, y: &Vec<usize>) -> Vec<usize> {
    x.iter().map(|&i| y[i]).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Cycle notation with 1-based points, `()` for the identity.
fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push_str(&format!("({})", cycle.join(",")));
    }
    if out.is_empty() { "()".to_string() } else { out }
}

/// A subgroup, stored as its sorted element indices plus a membership mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    fn from_mask(mask: Vec<bool>) -> Subgroup {
        let elements = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { elements, mask }
    }

    /// Verifies that `elements` is a subgroup of `g`.
    pub fn from_elements(g: &GroupTable, elements: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; g.order()];
        for &e in elements {
            g.check_index(e)?;
            mask[e] = true;
        }
        if !mask[0] {
            return Err(Error::InvalidSubgroup("missing the identity".into()));
        }
        let s = Subgroup::from_mask(mask);
        for &x in &s.elements {
            if !s.contains(g.inv(x)) {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {x}")));
            }
            for &y in &s.elements {
                if !s.contains(g.mul(x, y)) {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under multiplication at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn trivial(g: &GroupTable) -> Subgroup {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        Subgroup::from_mask(mask)
    }

    pub fn whole(g: &GroupTable) -> Subgroup {
        Subgroup::from_mask(vec![true; g.order()])
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(
            self.mask
                .iter()
                .zip(&other.mask)
                .map(|(&a, &b)| a && b)
                .collect(),
        )
    }

    /// Index of this subgroup in its parent.
    pub fn index_in(&self, g: &GroupTable) -> usize {
        g.order() / self.order()
    }
}

/// Smallest subgroup containing `gens`.
pub fn generate_subgroup(g: &GroupTable, gens: &[usize]) -> Result<Subgroup> {
    for &x in gens {
        g.check_index(x)?;
    }
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let p = g.mul(x, s);
            if !mask[p] {
                mask[p] = true;
                queue.push_back(p);
            }
        }
    }
    Ok(Subgroup::from_mask(mask))
}

/// `H^x = x^{-1} H x`.
pub fn conjugate_subgroup(g: &GroupTable, h: &Subgroup, x: usize) -> Result<Subgroup> {
    g.check_index(x)?;
    let mut mask = vec![false; g.order()];
    for &e in h.elements() {
        mask[g.conj(e, x)] = true;
    }
    Ok(Subgroup::from_mask(mask))
}

/// `AB = {ab : a in A, b in B}`, sorted.
pub fn set_product(g: &GroupTable, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut mask = vec![false; g.order()];
    for &x in a {
        for &y in b {
            mask[g.mul(x, y)] = true;
        }
    }
    mask.iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect()
}

/// Outcome of a commutation test between two subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commutation {
    pub commute: bool,
    /// Lexicographically smallest `(a, b)` with `ab` outside `BA`.
    pub witness: Option<(usize, usize)>,
}

/// Decides `AB = BA`.
pub fn subgroups_commute(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Commutation {
    let ba = set_product(g, b.elements(), a.elements());
    let mut in_ba = vec![false; g.order()];
    for &x in &ba {
        in_ba[x] = true;
    }
    for &x in a.elements() {
        for &y in b.elements() {
            if !in_ba[g.mul(x, y)] {
                return Commutation { commute: false, witness: Some((x, y)) };
            }
        }
    }
    // |AB| = |BA| (inversion is a bijection), so AB ⊆ BA forces equality
    Commutation { commute: true, witness: None }
}

/// Subgroup `AB` of two commuting subgroups.
pub fn product_subgroup(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
    let c = subgroups_commute(g, a, b);
    if let Some((x, y)) = c.witness {
        return Err(Error::NotCommuting { a: x, b: y });
    }
    Subgroup::from_elements(g, &set_product(g, a.elements(), b.elements()))
}

pub fn is_normal_in(g: &GroupTable, h: &Subgroup, n: &Subgroup) -> bool {
    h.is_subset_of(n)
        && n.elements()
            .iter()
            .all(|&x| h.elements().iter().all(|&e| h.contains(g.conj(e, x))))
}

pub fn is_normal(g: &GroupTable, h: &Subgroup) -> bool {
    is_normal_in(g, h, &Subgroup::whole(g))
}

/// Subgroup generated by all conjugates `x h x^{-1}`.
pub fn normal_closure(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let mut gens: Vec<usize> = g
        .elements()
        .flat_map(|x| h.elements().iter().map(move |&e| g.conj(e, g.inv(x))))
        .collect();
    gens.sort_unstable();
    gens.dedup();
    generate_subgroup(g, &gens).expect("conjugates are in range")
}

pub fn normalizer(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let mask = g
        .elements()
        .map(|x| h.elements().iter().all(|&e| h.contains(g.conj(e, x))))
        .collect();
    Subgroup::from_mask(mask)
}

/// Every subgroup of `g`, ordered by (order, elements).
pub fn all_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let cyclic: Vec<(usize, Subgroup)> = {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in g.elements() {
            let c = generate_subgroup(g, &[x]).expect("in range");
            if seen.insert(c.elements.clone()) {
                out.push((x, c));
            }
        }
        out
    };
    let mut found: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut queue = VecDeque::new();
    for (x, c) in &cyclic {
        if found.insert(c.elements.clone(), vec![*x]).is_none() {
            queue.push_back((c.clone(), vec![*x]));
        }
    }
    while let Some((s, gens)) = queue.pop_front() {
        for (x, c) in &cyclic {
            if c.is_subset_of(&s) {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(*x);
            let joined = generate_subgroup(g, &ng).expect("in range");
            if !found.contains_key(&joined.elements) {
                found.insert(joined.elements.clone(), ng.clone());
                queue.push_back((joined, ng));
            }
        }
    }
    let mut subs: Vec<Subgroup> = found
        .into_keys()
        .map(|e| Subgroup::from_elements(g, &e).expect("closure output is a subgroup"))
        .collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    subs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetKind {
    /// `Hg`
    Right,
    /// `gH`
    Left,
    /// `HgK`
    Double,
}

/// A partition of the group into cosets, with minimal representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    kind: CosetKind,
    block_of: Vec<usize>,
    reps: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl CosetSpace {
    fn partition(
        g: &GroupTable,
        kind: CosetKind,
        block: impl Fn(usize) -> Vec<usize>,
    ) -> CosetSpace {
        let mut block_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        let mut blocks = Vec::new();
        for x in g.elements() {
            if block_of[x] != usize::MAX {
                continue;
            }
            let mut members = block(x);
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                block_of[m] = reps.len();
            }
            reps.push(x);
            blocks.push(members);
        }
        CosetSpace { kind, block_of, reps, blocks }
    }

    /// Right cosets `Hg`.
    pub fn right(g: &GroupTable, h: &Subgroup) -> CosetSpace {
        CosetSpace::partition(g, CosetKind::Right, |x| {
            h.elements().iter().map(|&e| g.mul(e, x)).collect()
        })
    }

    /// Left cosets `gH`.
    pub fn left(g: &GroupTable, h: &Subgroup) -> CosetSpace {
        CosetSpace::partition(g, CosetKind::Left, |x| {
            h.elements().iter().map(|&e| g.mul(x, e)).collect()
        })
    }

    /// Double cosets `HgK`, the orbits of `(h, k) . x = h x k^{-1}`.
    pub fn double(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> CosetSpace {
        CosetSpace::partition(g, CosetKind::Double, |x| {
            let hx: Vec<usize> = h.elements().iter().map(|&e| g.mul(e, x)).collect();
            set_product(g, &hx, k.elements())
        })
    }

    pub fn kind(&self) -> CosetKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn rep(&self, block: usize) -> usize {
        self.reps[block]
    }

    pub fn block(&self, block: usize) -> &[usize] {
        &self.blocks[block]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// One element of `H` per right coset `Kh` of `K` in `H` (minimal indices,
/// ascending). With `K = H ∩ H^x` this is the family `S_x`.
pub fn rep_family(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<Vec<usize>> {
    if !k.is_subset_of(h) {
        return Err(Error::InvalidSubgroup("K is not contained in H".into()));
    }
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::with_capacity(h.order() / k.order());
    for &x in h.elements() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &e in k.elements() {
            covered[g.mul(e, x)] = true;
        }
    }
    Ok(reps)
}

/// Products `b_i c_j` of representatives of `B/A` and `C/B`; verified to be a
/// family of representatives of `C/A`.
pub fn chain_rep_product(
    g: &GroupTable,
    a: &Subgroup,
    b: &Subgroup,
    c: &Subgroup,
) -> Result<Vec<usize>> {
    if !a.is_subset_of(b) || !b.is_subset_of(c) {
        return Err(Error::InvalidSubgroup("chain A ⊆ B ⊆ C violated".into()));
    }
    let bs = rep_family(g, b, a)?;
    let cs = rep_family(g, c, b)?;
    let family: Vec<usize> = bs
        .iter()
        .flat_map(|&bi| cs.iter().map(move |&cj| g.mul(bi, cj)))
        .collect();
    let right = CosetSpace::right(g, a);
    let mut hit = HashSet::new();
    for &f in &family {
        if !c.contains(f) || !hit.insert(right.block_of(f)) {
            return Err(Error::Contradiction(
                "chain product is not a family of representatives".into(),
            ));
        }
    }
    if family.len() != c.order() / a.order() {
        return Err(Error::Contradiction("chain product has the wrong size".into()));
    }
    Ok(family)
}
