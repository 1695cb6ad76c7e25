#![allow(dead_code)]

use graphbell::graph::random_graph;
use graphbell::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// `g` plus a new last vertex adjacent to every other vertex.
pub fn plant_dominating(g: &Graph) -> Graph {
    let n = g.order();
    let mut edges = g.edges();
    edges.extend((0..n).map(|u| (u, n)));
    Graph::from_edges(n + 1, &edges).unwrap()
}

/// `g` with `clique` completed, plus a new last vertex adjacent exactly to `clique`.
pub fn plant_simplicial(g: &Graph, clique: &[usize]) -> Graph {
    let n = g.order();
    let mut edges = g.edges();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !g.has_edge(u, v) {
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.push((u, n));
    }
    Graph::from_edges(n + 1, &edges).unwrap()
}

/// A random base graph on 2 to 7 vertices and a planted simplicial vertex with
/// a random (possibly empty) neighbourhood.
pub fn random_simplicial<R: Rng>(rng: &mut R) -> Graph {
    let n = rng.gen_range(2..=7);
    let base = random_graph(n, 0.5, rng);
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(rng);
    let size = rng.gen_range(0..=n);
    plant_simplicial(&base, &vs[..size])
}

pub fn random_dominating<R: Rng>(rng: &mut R) -> Graph {
    let n = rng.gen_range(1..=7);
    plant_dominating(&random_graph(n, 0.5, rng))
}
