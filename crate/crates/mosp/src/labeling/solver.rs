//! The two label-correcting search loops.

use super::arena::{CleanConfig, LabelArena, LabelId, FLAG_IN_QUEUE, FLAG_POPPED, FLAG_PUSHED};
use super::ring::NodeRing;
use super::{
    lex_less, ParetoPoint, ParetoResult, QueuePolicy, RunMetrics, SolveError, SolverOptions,
    Strategy,
};
use crate::graph::Graph;
use std::collections::VecDeque;
use std::time::Instant;

/// How many queue selections pass between deadline polls.
const DEADLINE_STRIDE: u64 = 64;

/// Runs the strategy requested in `opts`.
pub fn solve(
    graph: &Graph,
    source: u32,
    target: u32,
    opts: &SolverOptions,
) -> Result<(ParetoResult, RunMetrics), SolveError> {
    match opts.strategy {
        Strategy::LabelSelection => run_label_selection(graph, source, target, opts),
        Strategy::NodeSelection => run_node_selection(graph, source, target, opts),
    }
}

fn check_endpoints(graph: &Graph, source: u32, target: u32) -> Result<(), SolveError> {
    for &v in &[source, target] {
        if v as usize >= graph.node_count() {
            return Err(SolveError::NodeOutOfRange {
                index: v,
                node_count: graph.node_count(),
            });
        }
    }
    Ok(())
}

fn clean_config(opts: &SolverOptions, touched_flag: u8, batch_is_antichain: bool) -> CleanConfig {
    CleanConfig {
        tree_deletion: opts.tree_deletion,
        measure_obsolete: opts.measure_obsolete && !opts.tree_deletion,
        touched_flag,
        batch_is_antichain,
    }
}

fn collect_front(arena: &LabelArena, target: u32) -> ParetoResult {
    let points = arena
        .live_labels_at(target)
        .iter()
        .map(|&l| ParetoPoint {
            path: arena.reconstruct_path(l),
            cost: arena.cost(l).to_vec(),
        })
        .collect();
    ParetoResult { points }
}

struct Deadline {
    at: Option<Instant>,
    ticks: u64,
}

impl Deadline {
    fn new(opts: &SolverOptions, started: Instant) -> Self {
        Deadline {
            at: opts.time_limit.map(|lim| started + lim),
            ticks: 0,
        }
    }

    #[inline]
    fn tick(&mut self) -> Result<(), SolveError> {
        if let Some(at) = self.at {
            self.ticks += 1;
            if self.ticks % DEADLINE_STRIDE == 0 && Instant::now() > at {
                return Err(SolveError::Timeout);
            }
        }
        Ok(())
    }
}

/// FIFO label selection: repeatedly pops one label, extends it along every
/// out-arc of its node and merges each extension into the head's label set
/// immediately. Survivors are enqueued; a label whose queue entry went stale
/// through deletion is skipped when popped.
pub fn run_label_selection(
    graph: &Graph,
    source: u32,
    target: u32,
    opts: &SolverOptions,
) -> Result<(ParetoResult, RunMetrics), SolveError> {
    opts.validate()?;
    if opts.strategy != Strategy::LabelSelection {
        return Err(SolveError::StrategyMismatch {
            expected: opts.strategy,
            actual: Strategy::LabelSelection,
        });
    }
    check_endpoints(graph, source, target)?;

    let started = Instant::now();
    let mut deadline = Deadline::new(opts, started);
    let mut metrics = RunMetrics::default();
    let mut arena = LabelArena::new(graph.node_count(), graph.dimension());
    let cfg = clean_config(opts, FLAG_POPPED, false);

    let root = arena.init_root(source);
    metrics.labels_created += 1;
    let mut queue: VecDeque<LabelId> = VecDeque::new();
    queue.push_back(root);
    arena.set_flag(root, FLAG_IN_QUEUE);

    while let Some(label) = queue.pop_front() {
        arena.clear_flag(label, FLAG_IN_QUEUE);
        if arena.is_deleted(label) {
            continue; // stale entry, owner died while queued
        }
        arena.set_flag(label, FLAG_POPPED);
        metrics.queue_pops += 1;
        deadline.tick()?;

        let u = arena.node(label);
        for (head, arc_cost) in graph.out_arcs(u) {
            let fresh = arena
                .push_label(label, head, arc_cost)
                .map_err(|_| SolveError::CostOverflow)?;
            metrics.labels_created += 1;
            metrics.label_pushes += 1;
            let survivors = arena.clean(head, &[fresh], cfg, &mut metrics);
            if survivors.first() == Some(&fresh) {
                debug_assert!(!arena.has_flag(fresh, FLAG_IN_QUEUE));
                match opts.queue_policy {
                    QueuePolicy::Fifo => queue.push_back(fresh),
                    QueuePolicy::LexFrontBack => {
                        let to_front = queue
                            .front()
                            .is_some_and(|&f| lex_less(arena.cost(fresh), arena.cost(f)));
                        if to_front {
                            queue.push_front(fresh);
                        } else {
                            queue.push_back(fresh);
                        }
                    }
                }
                arena.set_flag(fresh, FLAG_IN_QUEUE);
            }
            // Extending `label` can only delete labels at `head`, and no
            // vector reachable from `label` can dominate one of `label`'s
            // own ancestors, so the popped label survives its expansion.
            debug_assert!(!arena.is_deleted(label));
        }
    }

    let result = collect_front(&arena, target);
    metrics.front_size = result.len() as u64;
    metrics.wall_time = started.elapsed();
    Ok((result, metrics))
}

/// FIFO node selection: pops a node, snapshots its not-yet-pushed labels
/// once, extends the whole snapshot arc by arc (cleaning per arc), then
/// marks the snapshot pushed. A head node is enqueued when at least one
/// extension survived and it is not queued already.
pub fn run_node_selection(
    graph: &Graph,
    source: u32,
    target: u32,
    opts: &SolverOptions,
) -> Result<(ParetoResult, RunMetrics), SolveError> {
    opts.validate()?;
    if opts.strategy != Strategy::NodeSelection {
        return Err(SolveError::StrategyMismatch {
            expected: opts.strategy,
            actual: Strategy::NodeSelection,
        });
    }
    check_endpoints(graph, source, target)?;

    let started = Instant::now();
    let mut deadline = Deadline::new(opts, started);
    let mut metrics = RunMetrics::default();
    let n = graph.node_count();
    let mut arena = LabelArena::new(n, graph.dimension());
    let cfg = clean_config(opts, FLAG_PUSHED, true);

    let root = arena.init_root(source);
    metrics.labels_created += 1;
    let mut ring = NodeRing::new(n);
    let mut queued = vec![false; n];
    ring.push(source);
    queued[source as usize] = true;

    // Labels that became resident at a node and still await propagation.
    // Entries deleted in the meantime are skipped when drained, mirroring
    // how label selection skips stale queue entries.
    let mut pending: Vec<Vec<LabelId>> = vec![Vec::new(); n];
    pending[source as usize].push(root);

    let mut snapshot: Vec<LabelId> = Vec::new();
    let mut batch: Vec<LabelId> = Vec::new();

    while let Some(u) = ring.pop() {
        queued[u as usize] = false;
        metrics.queue_pops += 1;
        deadline.tick()?;

        snapshot.clear();
        snapshot.extend(
            pending[u as usize]
                .drain(..)
                .filter(|&l| !arena.is_deleted(l)),
        );
        if snapshot.is_empty() {
            continue; // every arrival since the enqueue died in the meantime
        }

        for (head, arc_cost) in graph.out_arcs(u) {
            batch.clear();
            for &l in &snapshot {
                // Tree deletion triggered at an earlier arc may have swept a
                // snapshot label; it is not extended any further.
                if arena.is_deleted(l) {
                    continue;
                }
                let fresh = arena
                    .push_label(l, head, arc_cost)
                    .map_err(|_| SolveError::CostOverflow)?;
                metrics.labels_created += 1;
                metrics.label_pushes += 1;
                batch.push(fresh);
            }
            if batch.is_empty() {
                continue;
            }
            let survivors = arena.clean(head, &batch, cfg, &mut metrics);
            if !survivors.is_empty() {
                pending[head as usize].extend_from_slice(&survivors);
                if !queued[head as usize] {
                    ring.push(head);
                    queued[head as usize] = true;
                }
            }
        }

        for &l in &snapshot {
            if !arena.is_deleted(l) {
                arena.set_flag(l, FLAG_PUSHED);
            }
        }
    }

    let result = collect_front(&arena, target);
    metrics.front_size = result.len() as u64;
    metrics.wall_time = started.elapsed();
    Ok((result, metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Cost;

    fn graph(n: usize, d: usize, arcs: &[(u32, u32, &[Cost])]) -> Graph {
        let arcs: Vec<_> = arcs.iter().map(|(t, h, c)| (*t, *h, c.to_vec())).collect();
        Graph::build(n, d, &arcs).unwrap()
    }

    fn all_option_sets() -> Vec<SolverOptions> {
        let mut out = Vec::new();
        for td in [false, true] {
            out.push(SolverOptions::label_selection().with_tree_deletion(td));
            out.push(
                SolverOptions::label_selection()
                    .with_tree_deletion(td)
                    .with_queue_policy(QueuePolicy::LexFrontBack),
            );
            out.push(SolverOptions::node_selection().with_tree_deletion(td));
        }
        out
    }

    #[test]
    fn two_route_graph_keeps_both_tradeoffs() {
        // Direct arc (3,1) versus two-arc route costing (2,2).
        let g = graph(3, 2, &[(0, 2, &[3, 1]), (0, 1, &[1, 1]), (1, 2, &[1, 1])]);
        for opts in all_option_sets() {
            let (front, metrics) = solve(&g, 0, 2, &opts).unwrap();
            let costs: Vec<_> = front.points.iter().map(|p| p.cost.clone()).collect();
            assert_eq!(costs, vec![vec![3, 1], vec![2, 2]], "{opts:?}");
            assert_eq!(front.points[0].path, vec![0, 2]);
            assert_eq!(front.points[1].path, vec![0, 1, 2]);
            assert_eq!(metrics.front_size, 2);
        }
    }

    #[test]
    fn dominated_route_is_pruned_and_tree_counted() {
        // Diamond: expensive direct hop to v gets dominated after it already
        // spawned a child at t.
        let arcs: &[(u32, u32, &[Cost])] = &[
            (0, 2, &[3, 3]),
            (0, 1, &[1, 1]),
            (1, 2, &[1, 1]),
            (2, 3, &[1, 1]),
        ];
        let g = graph(4, 2, arcs);
        for opts in all_option_sets() {
            let (front, metrics) = solve(&g, 0, 3, &opts).unwrap();
            let costs: Vec<_> = front.points.iter().map(|p| p.cost.clone()).collect();
            assert_eq!(costs, vec![vec![3, 3]], "{opts:?}");
            assert_eq!(front.points[0].path, vec![0, 1, 2, 3]);
            if opts.tree_deletion
                && opts.strategy == Strategy::LabelSelection
                && opts.queue_policy == QueuePolicy::Fifo
            {
                // FIFO LS pops (3,3)@v before the cheap route arrives, so
                // its child at t exists and gets swept. The lex policy
                // front-queues the cheap label and preempts the waste.
                assert_eq!(metrics.td_subtree_deleted, 1, "{opts:?}");
            }
        }
    }

    #[test]
    fn parallel_arcs_yield_both_labels() {
        let g = graph(3, 2, &[(0, 1, &[1, 0]), (0, 1, &[0, 1]), (1, 2, &[1, 1])]);
        for opts in all_option_sets() {
            let (front, _) = solve(&g, 0, 2, &opts).unwrap();
            let set = front.cost_set();
            assert_eq!(set.len(), 2, "{opts:?}");
            assert!(set.contains(&vec![2, 1]) && set.contains(&vec![1, 2]));
        }
    }

    #[test]
    fn source_equals_target() {
        let g = graph(2, 2, &[(0, 1, &[1, 1]), (1, 0, &[1, 1])]);
        for opts in all_option_sets() {
            let (front, _) = solve(&g, 0, 0, &opts).unwrap();
            assert_eq!(front.len(), 1, "{opts:?}");
            assert_eq!(front.points[0].cost, vec![0, 0]);
            assert_eq!(front.points[0].path, vec![0]);
        }
    }

    #[test]
    fn unreachable_target_gives_empty_front() {
        let g = graph(3, 1, &[(0, 1, &[1])]);
        for opts in all_option_sets() {
            let (front, metrics) = solve(&g, 0, 2, &opts).unwrap();
            assert!(front.is_empty(), "{opts:?}");
            assert_eq!(metrics.front_size, 0);
        }
    }

    #[test]
    fn zero_cost_components_are_fine() {
        let g = graph(3, 2, &[(0, 1, &[0, 0]), (1, 2, &[0, 1]), (0, 2, &[1, 0])]);
        for opts in all_option_sets() {
            let (front, _) = solve(&g, 0, 2, &opts).unwrap();
            let set = front.cost_set();
            assert!(set.contains(&vec![0, 1]) && set.contains(&vec![1, 0]), "{opts:?}");
        }
    }

    #[test]
    fn endpoint_validation() {
        let g = graph(2, 1, &[(0, 1, &[1])]);
        let opts = SolverOptions::label_selection();
        assert_eq!(
            solve(&g, 0, 9, &opts).unwrap_err(),
            SolveError::NodeOutOfRange {
                index: 9,
                node_count: 2
            }
        );
    }

    #[test]
    fn overflow_aborts_the_run() {
        let g = graph(
            3,
            1,
            &[(0, 1, &[u64::MAX - 1]), (1, 2, &[u64::MAX - 1])],
        );
        for opts in [SolverOptions::label_selection(), SolverOptions::node_selection()] {
            assert_eq!(solve(&g, 0, 2, &opts).unwrap_err(), SolveError::CostOverflow);
        }
    }

    #[test]
    fn wrong_entry_point_is_rejected() {
        let g = graph(2, 1, &[(0, 1, &[1])]);
        let opts = SolverOptions::node_selection();
        assert!(matches!(
            run_label_selection(&g, 0, 1, &opts),
            Err(SolveError::StrategyMismatch { .. })
        ));
    }

    #[test]
    fn determinism_across_repeats() {
        let arcs: &[(u32, u32, &[Cost])] = &[
            (0, 1, &[2, 7]),
            (0, 2, &[5, 1]),
            (1, 2, &[1, 1]),
            (1, 3, &[9, 2]),
            (2, 3, &[2, 6]),
            (2, 1, &[1, 1]),
            (0, 3, &[9, 9]),
        ];
        let g = graph(4, 2, arcs);
        for opts in all_option_sets() {
            let (f1, m1) = solve(&g, 0, 3, &opts).unwrap();
            let (f2, m2) = solve(&g, 0, 3, &opts).unwrap();
            assert_eq!(f1, f2, "{opts:?}");
            assert!(m1.same_counters(&m2), "{opts:?}");
        }
    }

    // With measurement enabled the search itself must not change: identical
    // front, identical counters apart from the two measurement fields.
    #[test]
    fn measurement_does_not_interfere() {
        let arcs: &[(u32, u32, &[Cost])] = &[
            (0, 2, &[3, 3]),
            (0, 1, &[1, 1]),
            (1, 4, &[1, 1]),
            (4, 2, &[0, 1]),
            (2, 3, &[1, 1]),
        ];
        let g = graph(5, 2, arcs);
        for base in [SolverOptions::label_selection(), SolverOptions::node_selection()] {
            let (f_plain, m_plain) = solve(&g, 0, 3, &base).unwrap();
            let (f_meas, m_meas) = solve(&g, 0, 3, &base.with_measure_obsolete(true)).unwrap();
            assert_eq!(f_plain, f_meas);
            let mut scrubbed = m_meas.clone();
            scrubbed.obsolete_touched = 0;
            scrubbed.obsolete_subtree = 0;
            scrubbed.wall_time = m_plain.wall_time;
            assert_eq!(scrubbed, {
                let mut p = m_plain.clone();
                p.wall_time = scrubbed.wall_time;
                p
            });
        }
    }

    // Hand-traced measurement: the expensive label at node 2 is popped and
    // extends to t before the cheap detour kills it, so exactly one touched
    // descendant is recorded under label selection.
    #[test]
    fn measured_touch_count_matches_hand_trace() {
        let arcs: &[(u32, u32, &[Cost])] = &[
            (0, 2, &[3, 3]),
            (0, 1, &[1, 1]),
            (1, 4, &[1, 1]),
            (4, 2, &[0, 1]),
            (2, 3, &[1, 1]),
        ];
        let g = graph(5, 2, arcs);
        let opts = SolverOptions::label_selection().with_measure_obsolete(true);
        let (front, metrics) = solve(&g, 0, 3, &opts).unwrap();
        assert_eq!(front.cost_set().into_iter().collect::<Vec<_>>(), vec![vec![3, 4]]);
        assert_eq!(metrics.obsolete_touched, 1);
        assert_eq!(metrics.obsolete_subtree, 1);
        // Tree deletion on the same instance sweeps that same descendant.
        let opts_td = SolverOptions::label_selection().with_tree_deletion(true);
        let (front_td, metrics_td) = solve(&g, 0, 3, &opts_td).unwrap();
        assert_eq!(front_td.cost_set(), front.cost_set());
        assert_eq!(metrics_td.td_subtree_deleted, 1);
    }

    #[test]
    fn lex_policy_changes_order_not_result() {
        let arcs: &[(u32, u32, &[Cost])] = &[
            (0, 1, &[9, 1]),
            (0, 1, &[1, 9]),
            (0, 2, &[4, 4]),
            (1, 2, &[1, 1]),
            (2, 3, &[1, 1]),
            (1, 3, &[8, 8]),
        ];
        let g = graph(4, 2, arcs);
        let fifo = SolverOptions::label_selection();
        let lex = fifo.with_queue_policy(QueuePolicy::LexFrontBack);
        let (f1, _) = solve(&g, 0, 3, &fifo).unwrap();
        let (f2, _) = solve(&g, 0, 3, &lex).unwrap();
        assert_eq!(f1.cost_set(), f2.cost_set());
    }

    #[test]
    fn timeout_fires_on_a_blowup_instance() {
        // Chain of diamonds: front size doubles per stage, so a tiny limit
        // trips reliably.
        let mut arcs: Vec<(u32, u32, Vec<Cost>)> = Vec::new();
        let stages = 18u32;
        for s in 0..stages {
            let a = 2 * s;
            let b = 2 * s + 2;
            arcs.push((a, b, vec![1 << s, 0]));
            arcs.push((a, b, vec![0, 1 << s]));
        }
        let g = Graph::build((2 * stages + 1) as usize, 2, &arcs).unwrap();
        let opts = SolverOptions::label_selection()
            .with_time_limit(Some(std::time::Duration::from_millis(1)));
        assert_eq!(
            solve(&g, 0, 2 * stages, &opts).unwrap_err(),
            SolveError::Timeout
        );
    }
}
