//! Index-based label storage shared by both search strategies.
//!
//! All labels live in one growable arena; references are plain `u32` indices.
//! Cost vectors sit in a single flat array in creation order, so the labels
//! created while pushing along one arc occupy consecutive memory. Deletion is
//! a flag: storage is never reclaimed during a run, which keeps every index
//! valid and makes lazily skipping stale queue entries safe.
//!
//! Each label records its predecessor, and the arena maintains the inverse
//! successor lists lazily (a successor list is an empty `Vec` until the first
//! child arrives, since most labels never get one). Those lists are what
//! makes deleting or measuring a whole descendant tree cheap.

use super::RunMetrics;
use crate::graph::Cost;

/// Reference to a label in a [`LabelArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelId(u32);

impl LabelId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NO_PRED: u32 = u32::MAX;

pub(crate) const FLAG_DELETED: u8 = 1;
pub(crate) const FLAG_IN_QUEUE: u8 = 1 << 1;
/// Label selection: the label was selected and propagated.
pub(crate) const FLAG_POPPED: u8 = 1 << 2;
/// Node selection: the label was propagated along all out-arcs of its node.
pub(crate) const FLAG_PUSHED: u8 = 1 << 3;

/// How `clean` reacts to a dominance deletion.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CleanConfig {
    pub tree_deletion: bool,
    /// Count already-processed descendants instead of deleting them. Only
    /// meaningful when `tree_deletion` is off.
    pub measure_obsolete: bool,
    /// Which flag marks a descendant as processed for the measurement.
    pub touched_flag: u8,
    /// The caller guarantees each `fresh` batch is already an antichain, so
    /// the quadratic self-reduction pass can be skipped. Node selection
    /// qualifies: its batches are same-arc children of one node's label
    /// set, and adding a constant vector preserves incomparability.
    pub batch_is_antichain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ObsoleteMeasure {
    /// Descendants that had already been popped/pushed.
    pub touched: u64,
    /// All descendants of the deleted label.
    pub subtree: u64,
}

#[derive(Debug, PartialEq, Eq)]
pub struct CostOverflow;

pub struct LabelArena {
    dim: usize,
    /// Label `i` stores its components at `i * dim..(i + 1) * dim`.
    cost: Vec<Cost>,
    node: Vec<u32>,
    pred: Vec<u32>,
    succ: Vec<Vec<LabelId>>,
    flags: Vec<u8>,
    /// Live labels per node, in insertion order. An antichain at all times:
    /// no member dominates another and no two members have equal cost.
    labels_at: Vec<Vec<LabelId>>,
}

impl LabelArena {
    pub fn new(node_count: usize, dim: usize) -> Self {
        assert!(dim > 0, "cost dimension must be at least 1");
        LabelArena {
            dim,
            cost: Vec::new(),
            node: Vec::new(),
            pred: Vec::new(),
            succ: Vec::new(),
            flags: Vec::new(),
            labels_at: vec![Vec::new(); node_count],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Number of labels ever created (deleted ones included).
    pub fn len(&self) -> usize {
        self.node.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node.is_empty()
    }

    /// Creates the root label: zero cost at `s`, no predecessor. Inserted
    /// into the label set of `s`.
    pub fn init_root(&mut self, s: u32) -> LabelId {
        debug_assert!(self.is_empty(), "root must be the first label");
        let id = self.alloc(s, NO_PRED);
        self.cost.resize(self.dim, 0);
        self.labels_at[s as usize].push(id);
        id
    }

    fn alloc(&mut self, node: u32, pred: u32) -> LabelId {
        let raw = u32::try_from(self.node.len()).expect("label arena exceeds u32 indices");
        self.node.push(node);
        self.pred.push(pred);
        self.succ.push(Vec::new());
        self.flags.push(0);
        LabelId(raw)
    }

    pub fn cost(&self, l: LabelId) -> &[Cost] {
        &self.cost[l.index() * self.dim..(l.index() + 1) * self.dim]
    }

    pub fn node(&self, l: LabelId) -> u32 {
        self.node[l.index()]
    }

    pub fn predecessor(&self, l: LabelId) -> Option<LabelId> {
        let p = self.pred[l.index()];
        (p != NO_PRED).then_some(LabelId(p))
    }

    pub fn successors(&self, l: LabelId) -> &[LabelId] {
        &self.succ[l.index()]
    }

    pub fn is_deleted(&self, l: LabelId) -> bool {
        self.flags[l.index()] & FLAG_DELETED != 0
    }

    pub(crate) fn has_flag(&self, l: LabelId, flag: u8) -> bool {
        self.flags[l.index()] & flag != 0
    }

    pub(crate) fn set_flag(&mut self, l: LabelId, flag: u8) {
        self.flags[l.index()] |= flag;
    }

    pub(crate) fn clear_flag(&mut self, l: LabelId, flag: u8) {
        self.flags[l.index()] &= !flag;
    }

    /// Live labels currently resident at node `u`, in insertion order.
    pub fn live_labels_at(&self, u: u32) -> &[LabelId] {
        &self.labels_at[u as usize]
    }

    /// Extends `from` along an arc to `head`, creating the child label with
    /// cost `cost(from) + arc_cost` and linking it into `from`'s successor
    /// list. The child is *not* yet a member of `head`'s label set; `clean`
    /// decides that.
    pub fn push_label(
        &mut self,
        from: LabelId,
        head: u32,
        arc_cost: &[Cost],
    ) -> Result<LabelId, CostOverflow> {
        debug_assert!(!self.is_deleted(from));
        debug_assert_eq!(arc_cost.len(), self.dim);
        let start = self.cost.len();
        let base = from.index() * self.dim;
        for (i, &c) in arc_cost.iter().enumerate() {
            match self.cost[base + i].checked_add(c) {
                Some(sum) => self.cost.push(sum),
                None => {
                    self.cost.truncate(start);
                    return Err(CostOverflow);
                }
            }
        }
        let id = self.alloc(head, from.0);
        self.succ[from.index()].push(id);
        Ok(id)
    }

    /// Merges the freshly created labels `fresh` (all at node `w`) into
    /// `w`'s label set, restoring the antichain property.
    ///
    /// Afterwards the set contains exactly the members of (old ∪ fresh)
    /// whose cost is not dominated by any other member, keeping the earliest
    /// created one within each equal-cost group. Returns the fresh labels
    /// that made it in, in creation order; everything else is marked deleted
    /// and unlinked from its predecessor's successor list. Dominated old
    /// members additionally trigger tree deletion or obsolete measurement
    /// per `cfg`.
    pub(crate) fn clean(
        &mut self,
        w: u32,
        fresh: &[LabelId],
        cfg: CleanConfig,
        metrics: &mut RunMetrics,
    ) -> Vec<LabelId> {
        // Pass 1: reduce the batch among itself. Earlier creation wins
        // ties. Skipped wholesale for antichain batches (the empty `alive`
        // then means "all alive" and costs nothing to allocate).
        let mut alive: Vec<bool> = Vec::new();
        if !cfg.batch_is_antichain {
            alive.resize(fresh.len(), true);
            for a in 0..fresh.len() {
                for b in (a + 1)..fresh.len() {
                    if !alive[a] {
                        break;
                    }
                    if !alive[b] {
                        continue;
                    }
                    let ca = self.cost(fresh[a]);
                    let cb = self.cost(fresh[b]);
                    if super::weakly_dominates(ca, cb) {
                        alive[b] = false;
                    } else if super::dominates(cb, ca) {
                        alive[a] = false;
                    }
                }
            }
            for (i, &nl) in fresh.iter().enumerate() {
                if !alive[i] {
                    self.discard_fresh(nl, metrics);
                }
            }
        }

        // Pass 2: surviving fresh labels against the resident antichain.
        let mut survivors = Vec::new();
        let mut victims: Vec<LabelId> = Vec::new();
        for (i, &nl) in fresh.iter().enumerate() {
            if (!alive.is_empty() && !alive[i]) || self.is_deleted(nl) {
                // Deleted mid-clean: a previous fresh label's tree deletion
                // took out one of this label's ancestors.
                continue;
            }
            victims.clear();
            let mut beaten = false;
            let w_idx = w as usize;
            let mut k = 0;
            while k < self.labels_at[w_idx].len() {
                let old = self.labels_at[w_idx][k];
                debug_assert!(!self.is_deleted(old));
                if super::weakly_dominates(self.cost(old), self.cost(nl)) {
                    // Dominated, or a duplicate of an earlier-created label.
                    beaten = true;
                    break;
                }
                if super::dominates(self.cost(nl), self.cost(old)) {
                    victims.push(old);
                }
                k += 1;
            }
            if beaten {
                self.discard_fresh(nl, metrics);
                continue;
            }
            for v in 0..victims.len() {
                let old = victims[v];
                self.delete_member(old, metrics);
                if cfg.tree_deletion {
                    let swept = self.tree_delete(old);
                    metrics.td_subtree_deleted += swept;
                    metrics.labels_deleted += swept;
                } else if cfg.measure_obsolete {
                    let m = self.measure_obsolete(old, cfg.touched_flag);
                    metrics.obsolete_touched += m.touched;
                    metrics.obsolete_subtree += m.subtree;
                }
            }
            self.labels_at[w_idx].push(nl);
            survivors.push(nl);
        }
        survivors
    }

    /// A fresh label that lost the cleaning step: never a member of any
    /// label set, so only the flag and the predecessor link go.
    fn discard_fresh(&mut self, l: LabelId, metrics: &mut RunMetrics) {
        debug_assert!(self.succ[l.index()].is_empty());
        self.set_flag(l, FLAG_DELETED);
        self.unlink_from_pred(l);
        metrics.labels_deleted += 1;
    }

    /// A resident label that got dominated: flag, drop from its node's set,
    /// unlink from the predecessor.
    fn delete_member(&mut self, l: LabelId, metrics: &mut RunMetrics) {
        // Victims at one node are pairwise incomparable, so sweeping one
        // victim's tree can never reach another victim.
        debug_assert!(!self.is_deleted(l));
        self.set_flag(l, FLAG_DELETED);
        self.remove_from_node_set(l);
        self.unlink_from_pred(l);
        metrics.labels_deleted += 1;
    }

    fn remove_from_node_set(&mut self, l: LabelId) {
        let set = &mut self.labels_at[self.node[l.index()] as usize];
        if let Some(pos) = set.iter().position(|&x| x == l) {
            set.remove(pos);
        }
    }

    fn unlink_from_pred(&mut self, l: LabelId) {
        let p = self.pred[l.index()];
        if p == NO_PRED {
            return;
        }
        let list = &mut self.succ[p as usize];
        if let Some(pos) = list.iter().position(|&x| x == l) {
            list.swap_remove(pos);
        }
    }

    /// Deletes the descendant tree of an already-deleted label. Returns the
    /// number of descendants removed (the root itself is not counted).
    ///
    /// Descendants are flagged deleted and dropped from their node sets;
    /// queue entries pointing at them become stale and are skipped lazily by
    /// the search loops.
    pub fn tree_delete(&mut self, root: LabelId) -> u64 {
        debug_assert!(self.is_deleted(root));
        let mut stack = std::mem::take(&mut self.succ[root.index()]);
        let mut swept = 0;
        while let Some(l) = stack.pop() {
            debug_assert!(!self.is_deleted(l), "deleted labels are unlinked");
            self.set_flag(l, FLAG_DELETED);
            // Fresh labels swept before their own clean ran are not members
            // of a node set yet; remove_from_node_set tolerates that.
            self.remove_from_node_set(l);
            swept += 1;
            let mut children = std::mem::take(&mut self.succ[l.index()]);
            stack.append(&mut children);
        }
        swept
    }

    /// Read-only mirror of [`tree_delete`]: walks the descendant tree of a
    /// deleted label and reports how many descendants were already processed
    /// (carry `touched_flag`) and how large the tree is. Mutates nothing.
    pub(crate) fn measure_obsolete(&self, root: LabelId, touched_flag: u8) -> ObsoleteMeasure {
        debug_assert!(self.is_deleted(root));
        let mut measure = ObsoleteMeasure::default();
        let mut stack: Vec<LabelId> = self.succ[root.index()].clone();
        while let Some(l) = stack.pop() {
            measure.subtree += 1;
            if self.flags[l.index()] & touched_flag != 0 {
                measure.touched += 1;
            }
            stack.extend_from_slice(&self.succ[l.index()]);
        }
        measure
    }

    /// Walks predecessor links back to the root and returns the node
    /// sequence in forward order. A root label yields its own node only.
    pub fn reconstruct_path(&self, l: LabelId) -> Vec<u32> {
        let mut path = Vec::new();
        let mut cur = Some(l);
        while let Some(x) = cur {
            path.push(self.node(x));
            cur = self.predecessor(x);
        }
        path.reverse();
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg_plain() -> CleanConfig {
        CleanConfig {
            tree_deletion: false,
            measure_obsolete: false,
            touched_flag: FLAG_POPPED,
            batch_is_antichain: false,
        }
    }

    #[test]
    fn root_label_shape() {
        let mut arena = LabelArena::new(3, 2);
        let root = arena.init_root(1);
        assert_eq!(arena.cost(root), &[0, 0]);
        assert_eq!(arena.node(root), 1);
        assert_eq!(arena.predecessor(root), None);
        assert_eq!(arena.live_labels_at(1), &[root]);
        assert_eq!(arena.reconstruct_path(root), vec![1]);
    }

    #[test]
    fn push_label_adds_costs_and_links() {
        let mut arena = LabelArena::new(3, 2);
        let root = arena.init_root(0);
        let child = arena.push_label(root, 2, &[4, 7]).unwrap();
        assert_eq!(arena.cost(child), &[4, 7]);
        assert_eq!(arena.node(child), 2);
        assert_eq!(arena.predecessor(child), Some(root));
        assert_eq!(arena.successors(root), &[child]);
        // Not yet a member of node 2's set.
        assert!(arena.live_labels_at(2).is_empty());
        assert_eq!(arena.reconstruct_path(child), vec![0, 2]);
    }

    #[test]
    fn push_label_overflow_is_an_error_and_leaves_arena_usable() {
        let mut arena = LabelArena::new(2, 2);
        let root = arena.init_root(0);
        let big = arena.push_label(root, 1, &[u64::MAX - 1, 1]).unwrap();
        assert_eq!(arena.push_label(big, 0, &[5, 0]), Err(CostOverflow));
        // The failed push must not leave partial cost components behind.
        let ok = arena.push_label(big, 0, &[0, 1]).unwrap();
        assert_eq!(arena.cost(ok), &[u64::MAX - 1, 2]);
    }

    #[test]
    fn clean_keeps_incomparable_vectors() {
        let mut arena = LabelArena::new(2, 2);
        let mut metrics = RunMetrics::default();
        let root = arena.init_root(0);
        let a = arena.push_label(root, 1, &[1, 5]).unwrap();
        let b = arena.push_label(root, 1, &[5, 1]).unwrap();
        assert_eq!(arena.clean(1, &[a], cfg_plain(), &mut metrics), vec![a]);
        assert_eq!(arena.clean(1, &[b], cfg_plain(), &mut metrics), vec![b]);
        let c = arena.push_label(root, 1, &[3, 3]).unwrap();
        assert_eq!(arena.clean(1, &[c], cfg_plain(), &mut metrics), vec![c]);
        assert_eq!(arena.live_labels_at(1), &[a, b, c]);
        assert_eq!(metrics.labels_deleted, 0);
    }

    #[test]
    fn clean_removes_dominated_member() {
        let mut arena = LabelArena::new(2, 2);
        let mut metrics = RunMetrics::default();
        let root = arena.init_root(0);
        let old = arena.push_label(root, 1, &[4, 4]).unwrap();
        arena.clean(1, &[old], cfg_plain(), &mut metrics);
        let fresh = arena.push_label(root, 1, &[2, 3]).unwrap();
        assert_eq!(arena.clean(1, &[fresh], cfg_plain(), &mut metrics), vec![fresh]);
        assert!(arena.is_deleted(old));
        assert_eq!(arena.live_labels_at(1), &[fresh]);
        assert_eq!(metrics.labels_deleted, 1);
        // The dead label no longer hangs off the root.
        assert_eq!(arena.successors(root), &[fresh]);
    }

    #[test]
    fn clean_discards_duplicate_cost_keeping_the_earlier_label() {
        let mut arena = LabelArena::new(2, 2);
        let mut metrics = RunMetrics::default();
        let root = arena.init_root(0);
        let first = arena.push_label(root, 1, &[2, 2]).unwrap();
        arena.clean(1, &[first], cfg_plain(), &mut metrics);
        let dup = arena.push_label(root, 1, &[2, 2]).unwrap();
        assert!(arena.clean(1, &[dup], cfg_plain(), &mut metrics).is_empty());
        assert!(arena.is_deleted(dup));
        assert!(!arena.is_deleted(first));
        assert_eq!(arena.live_labels_at(1), &[first]);
    }

    #[test]
    fn clean_reduces_the_fresh_batch_first() {
        let mut arena = LabelArena::new(2, 2);
        let mut metrics = RunMetrics::default();
        let root = arena.init_root(0);
        let a = arena.push_label(root, 1, &[3, 3]).unwrap();
        let b = arena.push_label(root, 1, &[2, 2]).unwrap();
        let c = arena.push_label(root, 1, &[2, 2]).unwrap();
        let survivors = arena.clean(1, &[a, b, c], cfg_plain(), &mut metrics);
        // b dominates a; c duplicates b and b came first.
        assert_eq!(survivors, vec![b]);
        assert!(arena.is_deleted(a) && arena.is_deleted(c));
    }

    // Diamond where the long two-arc route gets dominated after its child
    // was already created: tree deletion must sweep exactly that child.
    #[test]
    fn tree_delete_sweeps_descendants() {
        let mut arena = LabelArena::new(4, 2);
        let mut metrics = RunMetrics::default();
        let cfg_td = CleanConfig {
            tree_deletion: true,
            measure_obsolete: false,
            touched_flag: FLAG_POPPED,
            batch_is_antichain: false,
        };
        let root = arena.init_root(0);
        // Root -> v via the expensive arc.
        let via_direct = arena.push_label(root, 2, &[3, 3]).unwrap();
        arena.clean(2, &[via_direct], cfg_td, &mut metrics);
        // v -> t from the expensive label.
        let at_t = arena.push_label(via_direct, 3, &[4, 4]).unwrap();
        arena.clean(3, &[at_t], cfg_td, &mut metrics);
        // Root -> u -> v cheap route arrives at v and dominates.
        let via_u = arena.push_label(root, 1, &[1, 1]).unwrap();
        arena.clean(1, &[via_u], cfg_td, &mut metrics);
        let cheap_v = arena.push_label(via_u, 2, &[1, 1]).unwrap();
        let survivors = arena.clean(2, &[cheap_v], cfg_td, &mut metrics);
        assert_eq!(survivors, vec![cheap_v]);
        assert!(arena.is_deleted(via_direct));
        assert!(arena.is_deleted(at_t), "descendant at t swept along");
        assert_eq!(metrics.td_subtree_deleted, 1);
        assert!(arena.live_labels_at(3).is_empty());
        // labels_deleted covers both the dominated label and its subtree.
        assert_eq!(metrics.labels_deleted, 2);
    }

    #[test]
    fn measure_obsolete_counts_touched_descendants_without_deleting() {
        let mut arena = LabelArena::new(5, 2);
        let mut metrics = RunMetrics::default();
        let cfg = CleanConfig {
            tree_deletion: false,
            measure_obsolete: true,
            touched_flag: FLAG_POPPED,
            batch_is_antichain: false,
        };
        let root = arena.init_root(0);
        let doomed = arena.push_label(root, 1, &[3, 3]).unwrap();
        arena.clean(1, &[doomed], cfg, &mut metrics);
        let child = arena.push_label(doomed, 2, &[4, 4]).unwrap();
        arena.clean(2, &[child], cfg, &mut metrics);
        let grandchild = arena.push_label(child, 3, &[5, 5]).unwrap();
        arena.clean(3, &[grandchild], cfg, &mut metrics);
        arena.set_flag(child, FLAG_POPPED); // processed; grandchild not
        let killer = arena.push_label(root, 1, &[1, 2]).unwrap();
        arena.clean(1, &[killer], cfg, &mut metrics);
        assert!(arena.is_deleted(doomed));
        assert!(!arena.is_deleted(child), "measurement must not delete");
        assert!(!arena.is_deleted(grandchild));
        assert_eq!(metrics.obsolete_touched, 1);
        assert_eq!(metrics.obsolete_subtree, 2);
        assert_eq!(metrics.td_subtree_deleted, 0);
        // The live descendants remain resident at their nodes.
        assert_eq!(arena.live_labels_at(2), &[child]);
        assert_eq!(arena.live_labels_at(3), &[grandchild]);
    }

    #[test]
    fn reconstruct_path_walks_a_chain() {
        let mut arena = LabelArena::new(6, 1);
        let root = arena.init_root(0);
        let mut cur = root;
        for v in 1..6u32 {
            cur = arena.push_label(cur, v, &[1]).unwrap();
        }
        assert_eq!(arena.reconstruct_path(cur), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(arena.cost(cur), &[5]);
    }
}
