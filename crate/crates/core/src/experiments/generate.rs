//! Seeded instance generators.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::factors::Assignment;
use crate::graph::{hnk, Edge, GraphCollection, LabeledGraph};
use crate::schedules::{HubCollection, Layer};

/// Generator for instance `id` of a run seeded with `seed`: one ChaCha
/// stream per instance, so instances are independent of scheduling.
pub fn instance_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> LabeledGraph {
    let mut g = LabeledGraph::empty(n);
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.random_bool(p) {
                g.add_edge(a, b).expect("in range");
            }
        }
    }
    g
}

/// A uniformly placed `(hub, clique part)` pair for `H_{n,k}`.
pub fn random_hub_parts<R: Rng>(rng: &mut R, n: usize, k: usize) -> (usize, Vec<usize>) {
    let hub = rng.random_range(1..=n);
    let others: Vec<usize> = (1..=n).filter(|&v| v != hub).collect();
    let mut b: Vec<usize> = others.choose_multiple(rng, k - 1).copied().collect();
    b.sort_unstable();
    (hub, b)
}

/// `kn/2` random labeled `H_{n,k}` copies, not all identical.
pub fn random_hub_collection<R: Rng>(rng: &mut R, n: usize, k: usize) -> HubCollection {
    let m = k * n / 2;
    loop {
        let members: Vec<_> = (0..m).map(|_| random_hub_parts(rng, n, k)).collect();
        if members.windows(2).any(|w| w[0] != w[1]) {
            return HubCollection::from_parts(n, k, &members).expect("valid parts");
        }
    }
}

/// Each member of a random hub collection plus a random nonempty set of
/// its missing hub edges.
pub fn random_supergraph_collection<R: Rng>(rng: &mut R, n: usize, k: usize) -> GraphCollection {
    let hc = random_hub_collection(rng, n, k);
    let graphs = (1..=hc.len())
        .map(|c| {
            let mut g = hc.collection().member(c).clone();
            let hub = hc.hub(c);
            let missing: Vec<usize> = (1..=n).filter(|&v| v != hub && !g.has_edge(hub, v)).collect();
            let mut added = false;
            for &v in &missing {
                if rng.random_bool(0.5) {
                    g.add_edge(hub, v).expect("in range");
                    added = true;
                }
            }
            if !added {
                let &v = missing.choose(rng).expect("k < n - 1 leaves a missing edge");
                g.add_edge(hub, v).expect("in range");
            }
            g
        })
        .collect();
    GraphCollection::new(k, graphs).expect("same order")
}

/// `kn/2` copies of `H_{n,k}` with hub `n` and clique part `1..k-1`.
pub fn extremal_collection(n: usize, k: usize) -> GraphCollection {
    let b: Vec<usize> = (1..k).collect();
    let g = hnk(n, k, n, &b).expect("valid parameters");
    GraphCollection::new(k, vec![g; k * n / 2]).expect("same order")
}

/// A member for `color` that contains `e`: a uniform hub, joined to the
/// other endpoint when it lands on `e`.
fn member_for<R: Rng>(rng: &mut R, n: usize, e: Edge) -> (usize, Vec<usize>) {
    let hub = rng.random_range(1..=n);
    match e.other(hub) {
        Some(x) => (hub, vec![x]),
        None => {
            let others: Vec<usize> = (1..=n).filter(|&v| v != hub).collect();
            (hub, vec![*others.choose(rng).expect("n >= 2")])
        }
    }
}

fn random_perfect_matching<R: Rng>(rng: &mut R, vertices: &[usize]) -> Vec<Edge> {
    let mut vs = vertices.to_vec();
    vs.shuffle(rng);
    vs.chunks(2).map(|p| Edge::new(p[0], p[1])).collect()
}

/// Colliding layers for `k = 2`.
///
/// Even `n`: two perfect matchings that share at least one edge. Odd `n`: a
/// Hamiltonian cycle `v1 ... vn` with `v1v2, v3v4` replaced by a second copy
/// of `v2v3` and `v1v4`; about half of the time both copies of `v2v3` come
/// from members with hub `v2`. Members are `H_{n,2}` copies containing their
/// assigned edge; not all identical.
pub fn colliding_instance<R: Rng>(rng: &mut R, n: usize) -> (HubCollection, Vec<Layer>) {
    assert!(n >= 5, "colliding instances need n >= 5");
    loop {
        let mut vs: Vec<usize> = (1..=n).collect();
        vs.shuffle(rng);
        let layer_edges: Vec<Vec<Edge>> = if n % 2 == 0 {
            let m1 = random_perfect_matching(rng, &vs);
            let shared = m1[0];
            let rest: Vec<usize> = vs.iter().copied().filter(|&v| !shared.contains(v)).collect();
            let mut m2 = random_perfect_matching(rng, &rest);
            m2.push(shared);
            vec![m1, m2]
        } else {
            let mut cyc: Vec<Edge> = (0..n).map(|i| Edge::new(vs[i], vs[(i + 1) % n])).collect();
            cyc.retain(|&e| e != Edge::new(vs[0], vs[1]) && e != Edge::new(vs[2], vs[3]));
            cyc.push(Edge::new(vs[1], vs[2]));
            cyc.push(Edge::new(vs[0], vs[3]));
            vec![cyc]
        };

        let m = n;
        let mut colors: Vec<usize> = (1..=m).collect();
        colors.shuffle(rng);
        let mut members = vec![(0, Vec::new()); m];
        let mut layers = Vec::new();
        let mut next = colors.into_iter();
        let doubled = Edge::new(vs[1], vs[2]);
        let same_hub = n % 2 == 1 && rng.random_bool(0.5);
        for edges in &layer_edges {
            let mut asg = Vec::new();
            for &e in edges {
                let color = next.next().expect("m colours");
                members[color - 1] = if same_hub && e == doubled {
                    (vs[1], vec![vs[2]])
                } else {
                    member_for(rng, n, e)
                };
                asg.push(Assignment { edge: e, color });
            }
            layers.push(Layer::new(asg));
        }
        if members.windows(2).any(|w| w[0] != w[1]) {
            let hc = HubCollection::from_parts(n, 2, &members).expect("valid parts");
            return (hc, layers);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_and_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| instance_rng(7, 3).random()).collect();
        let b: Vec<u32> = (0..4).map(|_| instance_rng(7, 3).random()).collect();
        assert_eq!(a, b);
        let mut r1 = instance_rng(7, 3);
        let mut r2 = instance_rng(7, 4);
        assert_ne!(r1.random::<u64>(), r2.random::<u64>());
    }

    #[test]
    fn supergraphs_contain_their_copy() {
        let mut rng = instance_rng(1, 0);
        let gc = random_supergraph_collection(&mut rng, 8, 2);
        assert_eq!(gc.len(), 8);
        let base = (7 * 6) / 2 + 1;
        assert!(gc.graphs().iter().all(|g| g.edge_count() > base));
    }

    #[test]
    fn colliding_instances_collide() {
        for n in 7..=10 {
            for id in 0..20 {
                let (hc, layers) = colliding_instance(&mut instance_rng(5, id), n);
                let mut edges: Vec<Edge> = layers
                    .iter()
                    .flat_map(|l| l.assignments.iter().map(|a| a.edge))
                    .collect();
                assert_eq!(edges.len(), n);
                edges.sort_unstable();
                assert!(edges.windows(2).any(|w| w[0] == w[1]));
                for l in &layers {
                    for a in &l.assignments {
                        assert!(hc.collection().contains(a.color, a.edge));
                    }
                }
            }
        }
    }
}
