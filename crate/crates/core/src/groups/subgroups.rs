use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{ElementSet, FiniteGroup, GroupError, GroupHom};

/// Closure of `gens` under multiplication (always contains the identity).
pub(crate) fn closure(g: &FiniteGroup, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::new(g.order());
    set.insert(g.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// A subgroup of a parent group, stored as a bitset over parent indices.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: ElementSet,
    order: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("order", &self.order).field("elements", &self.elements).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl Subgroup {
    pub fn generated(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let elements = closure(&parent, gens);
        let order = elements.len();
        Subgroup { parent, elements, order }
    }

    /// Checks closure under the parent multiplication.
    pub fn from_elements(parent: Arc<FiniteGroup>, elements: ElementSet) -> Result<Self, GroupError> {
        if elements.capacity() != parent.order() || !elements.contains(parent.identity()) {
            return Err(GroupError::NotASubgroup);
        }
        for a in elements.iter() {
            if !elements.contains(parent.inv(a)) {
                return Err(GroupError::NotASubgroup);
            }
            for b in elements.iter() {
                if !elements.contains(parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        let order = elements.len();
        Ok(Subgroup { parent, elements, order })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let elements = ElementSet::full(parent.order());
        let order = parent.order();
        Subgroup { parent, elements, order }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let elements = ElementSet::from_indices(parent.order(), [parent.identity()]);
        Subgroup { parent, elements, order: 1 }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_abelian(&self) -> bool {
        let els: Vec<usize> = self.elements.iter().collect();
        els.iter().enumerate().all(|(i, &a)| els[i + 1..].iter().all(|&b| self.parent.commute(a, b)))
    }

    /// `x^-1 H x`.
    pub fn conjugate(&self, x: usize) -> Subgroup {
        let g = &self.parent;
        let elements = ElementSet::from_indices(g.order(), self.elements.iter().map(|h| g.conj(x, h)));
        Subgroup { parent: g.clone(), elements, order: self.order }
    }

    /// The subgroup as a standalone group (elements renumbered in increasing
    /// parent order) together with its inclusion into the parent.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let els: Vec<usize> = self.elements.iter().collect();
        let mut local = vec![usize::MAX; self.parent.order()];
        for (i, &g) in els.iter().enumerate() {
            local[g] = i;
        }
        let n = els.len();
        let mut table = vec![0u32; n * n];
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                table[i * n + j] = local[self.parent.mul(a, b)] as u32;
            }
        }
        let identity = local[self.parent.identity()];
        let group = Arc::new(
            FiniteGroup::from_trusted(table, n, identity)
                .with_name(format!("subgroup of order {n} in {}", self.parent.name())),
        );
        let inclusion = GroupHom::new_unchecked(group.clone(), self.parent.clone(), els);
        (group, inclusion)
    }
}

/// `{x : xs = sx}`.
pub fn centralizer(g: &Arc<FiniteGroup>, s: usize) -> Subgroup {
    let elements = ElementSet::from_indices(g.order(), g.elements().filter(|&x| g.commute(x, s)));
    let order = elements.len();
    Subgroup { parent: g.clone(), elements, order }
}

pub fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let elements = ElementSet::from_indices(g.order(), g.elements().filter(|&x| g.elements().all(|y| g.commute(x, y))));
    let order = elements.len();
    Subgroup { parent: g.clone(), elements, order }
}

fn cyclic_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let h = Subgroup::generated(g.clone(), &[x]);
        if seen.insert(h.elements.clone()) {
            out.push(h);
        }
    }
    out
}

/// Every subgroup exactly once, ordered by (order, element bitset).
///
/// Breadth-first joins of known subgroups with cyclic subgroups; every
/// subgroup is generated by its cyclic subgroups, so this reaches all of them.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let cyclics = cyclic_subgroups(g);
    let mut seen: HashSet<ElementSet> = cyclics.iter().map(|c| c.elements.clone()).collect();
    let mut all: Vec<(Subgroup, Vec<usize>)> = cyclics
        .iter()
        .map(|c| {
            let gen = c.elements.iter().find(|&x| g.element_order(x) as usize == c.order).unwrap();
            (c.clone(), vec![gen])
        })
        .collect();
    let cyclic_gens: Vec<usize> = all.iter().map(|(_, gens)| gens[0]).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for &c in &cyclic_gens {
                if all[i].0.contains(c) {
                    continue;
                }
                let mut gens = all[i].1.clone();
                gens.push(c);
                let elements = closure(g, &gens);
                if seen.insert(elements.clone()) {
                    let order = elements.len();
                    all.push((Subgroup { parent: g.clone(), elements, order }, gens));
                    next.push(all.len() - 1);
                }
            }
        }
        log::debug!("subgroup search: {} found, {} new", all.len(), next.len());
        frontier = next;
    }
    let mut out: Vec<Subgroup> = all.into_iter().map(|(s, _)| s).collect();
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.elements.cmp(&b.elements)));
    out
}

pub fn abelian_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(Subgroup::is_abelian).collect()
}

/// Subgroups `<x, y>` with `xy = yx`, deduplicated and sorted like
/// [`all_subgroups`].
pub fn bicyclic_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        for y in x..g.order() {
            if !g.commute(x, y) {
                continue;
            }
            let elements = closure(g, &[x, y]);
            if seen.insert(elements.clone()) {
                let order = elements.len();
                out.push(Subgroup { parent: g.clone(), elements, order });
            }
        }
    }
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.elements.cmp(&b.elements)));
    out
}

/// Members not strictly contained in another member of the list.
pub fn maximal_members(subs: &[Subgroup]) -> Vec<Subgroup> {
    subs.iter().filter(|a| !subs.iter().any(|b| b.order > a.order && a.is_subgroup_of(b))).cloned().collect()
}

/// One member of each conjugacy class present in the list, keeping the
/// first occurrence.
pub fn up_to_conjugacy(subs: Vec<Subgroup>) -> Vec<Subgroup> {
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for h in subs {
        if seen.contains(&h.elements) {
            continue;
        }
        let g = h.parent.clone();
        for x in g.elements() {
            seen.insert(h.conjugate(x).elements);
        }
        out.push(h);
    }
    out
}

/// A subgroup `D` together with an element `s` centralizing it; `s` is the
/// image of the canonical generator of the inertia group `Z/q`.
#[derive(Clone, Debug)]
pub struct ResiduePair {
    pub subgroup: Subgroup,
    pub element: usize,
    pub torsion_order: u64,
}

impl ResiduePair {
    pub fn new(subgroup: Subgroup, element: usize) -> Result<Self, GroupError> {
        let g = subgroup.parent().clone();
        if element >= g.order() {
            return Err(GroupError::EntryOutOfRange { row: 0, col: 0, value: element, order: g.order() });
        }
        let torsion_order = g.element_order(element);
        Ok(ResiduePair { subgroup, element, torsion_order })
    }

    pub fn is_centralizing(&self) -> bool {
        let g = self.subgroup.parent();
        self.subgroup.elements().iter().all(|d| g.commute(d, self.element))
    }
}

/// One pair `(Z_G(s), s)` per element `s`, identity included.
/// One pair per conjugacy class of elements. Conjugate pairs have
/// conjugate residue maps, so kernels computed over these agree with the
/// full list.
pub fn residue_pair_reps(g: &Arc<FiniteGroup>) -> Vec<ResiduePair> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in g.elements() {
        if seen[s] {
            continue;
        }
        for x in g.elements() {
            seen[g.conj(x, s)] = true;
        }
        out.push(ResiduePair { subgroup: centralizer(g, s), element: s, torsion_order: g.element_order(s) });
    }
    out
}

pub fn residue_pairs(g: &Arc<FiniteGroup>) -> Vec<ResiduePair> {
    g.elements()
        .map(|s| ResiduePair { subgroup: centralizer(g, s), element: s, torsion_order: g.element_order(s) })
        .collect()
}
