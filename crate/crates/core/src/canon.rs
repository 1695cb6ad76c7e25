//! Relabeling-invariant fingerprints for memoization.
//!
//! Vertices are coloured by iterated degree refinement (1-dimensional
//! Weisfeiler–Leman). Colours are numbered by the sorted order of their
//! signatures, so the final colouring does not depend on vertex labels. The key
//! digests the stable colouring's quotient: class sizes and the number of
//! neighbours each class has in every other class.
//!
//! Refinement is not a complete isomorphism test, so distinct graphs can share
//! a key. Callers that need exactness compare [`canonical_form`]s as well.

use sha2::{Digest, Sha256};

use crate::graph::Graph;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub [u8; 32]);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalKey({})", &self.to_hex()[..16])
    }
}

/// Stable colour class of every vertex after refinement.
pub fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_classes(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    key_from_colors(g, &refine_colors(g))
}

fn key_from_colors(g: &Graph, colors: &[usize]) -> CanonicalKey {
    let classes = colors.iter().max().map_or(0, |&c| c + 1);
    let mut sizes = vec![0u64; classes];
    // a stable colouring gives every member of a class the same profile, so
    // summing over members is still relabeling invariant
    let mut links = vec![0u64; classes * classes];
    for v in 0..g.order() {
        sizes[colors[v]] += 1;
        for w in g.neighbors(v) {
            links[colors[v] * classes + colors[w]] += 1;
        }
    }
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    h.update((g.edge_count() as u64).to_le_bytes());
    h.update((classes as u64).to_le_bytes());
    for s in sizes {
        h.update(s.to_le_bytes());
    }
    for l in links {
        h.update(l.to_le_bytes());
    }
    CanonicalKey(h.finalize().into())
}

/// The graph renumbered by refined colour (ties broken by original index),
/// together with its key. Two graphs with equal forms are isomorphic.
pub fn canonical_form(g: &Graph) -> (CanonicalKey, Graph) {
    let colors = refine_colors(g);
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&v| (colors[v], v));
    (key_from_colors(g, &colors), g.relabel(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{FamilyKind, FamilySpec};

    #[test]
    fn relabeling_invariance_on_p3() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_eq!(canonical_form(&a).1, canonical_form(&b).1);
    }

    #[test]
    fn distinguishes_by_edge_count() {
        let k3 = Graph::complete(3);
        let p3 = FamilySpec::path(3, 0).build().unwrap();
        assert_ne!(canonical_key(&k3), canonical_key(&p3));
    }

    #[test]
    fn c5_key_is_fixed() {
        // frozen digest: must not change between runs or builds
        let c5 = FamilySpec::cycle(5, 0).build().unwrap();
        let key = canonical_key(&c5);
        assert_eq!(key, canonical_key(&c5.clone()));
        assert_eq!(key.to_hex(), C5_KEY_HEX);
    }

    const C5_KEY_HEX: &str = "80fe8e504a11204058bd8a0a57ac8a3ed5af7b9dfcf48ebdf419a887b47af62e";

    #[test]
    fn regular_graphs_collide_but_forms_differ() {
        // C6 and 2C3 are both 2-regular on 6 vertices
        let c6 = FamilySpec::cycle(6, 0).build().unwrap();
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let (k1, f1) = canonical_form(&c6);
        let (k2, f2) = canonical_form(&two_triangles);
        assert_eq!(k1, k2);
        assert_ne!(f1, f2);
    }

    #[test]
    fn star_relabelings_share_form() {
        let star = FamilySpec::new(FamilyKind::Star, 5).build().unwrap();
        let moved = star.relabel(&[3, 1, 0, 4, 2]);
        assert_eq!(canonical_form(&star), canonical_form(&moved));
    }
}
