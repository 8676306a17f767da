//! Brute-force Wick pairing of 4-valent ribbon vertices.
//!
//! Half-edges of vertex `i` are `4i..4i+3` in cyclic order. A perfect
//! matching `α` glues them into edges; faces are the cycles of `σ∘α`.
//! The two sides of edge `{h, α(h)}` belong to the faces of `h` and `α(h)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Coeff, ExactScalar};
use crate::error::{QkmError, Result};
use crate::spectral::SpectralInput;

type E = ExactScalar;

pub const MAX_VERTICES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    pub v: usize,
    /// `matching[h]` is the half-edge glued to `h`.
    pub matching: Vec<usize>,
}

impl RibbonGraph {
    fn rotate(h: usize) -> usize {
        4 * (h / 4) + (h + 1) % 4
    }

    /// Face index of every half-edge, numbered by first appearance.
    pub fn face_of(&self) -> Vec<usize> {
        let n = self.matching.len();
        let mut face = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if face[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            while face[h] == usize::MAX {
                face[h] = next;
                h = Self::rotate(self.matching[h]);
            }
            next += 1;
        }
        face
    }

    pub fn faces(&self) -> usize {
        self.face_of().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.v).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (h, &g) in self.matching.iter().enumerate() {
            let (a, b) = (find(&mut parent, h / 4), find(&mut parent, g / 4));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..self.v).all(|i| find(&mut parent, i) == root)
    }

    /// `v − E + F = 2 − 2g` with `E = 2v`.
    pub fn genus(&self) -> usize {
        (2 + self.v - self.faces()) / 2
    }

    /// Edges as pairs of face indices, `a ≤ b`.
    pub fn edge_faces(&self) -> Vec<(usize, usize)> {
        let face = self.face_of();
        let mut out = Vec::with_capacity(2 * self.v);
        for (h, &g) in self.matching.iter().enumerate() {
            if h < g {
                let (a, b) = (face[h], face[g]);
                out.push((a.min(b), a.max(b)));
            }
        }
        out
    }

    /// Whether the faces 2-colour so that every edge separates two colours,
    /// i.e. whether the dual quadrangulation is bipartite.
    pub fn bipartite(&self) -> bool {
        let edges = self.edge_faces();
        let f = self.faces();
        let mut colour = vec![None; f];
        colour[0] = Some(false);
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &edges {
                if a == b {
                    return false;
                }
                match (colour[a], colour[b]) {
                    (Some(x), Some(y)) if x == y => return false,
                    (Some(x), None) => {
                        colour[b] = Some(!x);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        colour[a] = Some(!y);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        true
    }
}

/// All perfect matchings of `0..2m`, in lexicographic order.
pub fn perfect_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match m.iter().position(|&x| x == usize::MAX) {
            None => out.push(m.clone()),
            Some(i) => {
                for j in i + 1..m.len() {
                    if m[j] == usize::MAX {
                        m[i] = j;
                        m[j] = i;
                        rec(m, out);
                        m[i] = usize::MAX;
                        m[j] = usize::MAX;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Graphs with the same face count and edge/face incidences up to
/// relabelling of faces.
#[derive(Debug, Clone, Serialize)]
pub struct GraphClass {
    pub faces: usize,
    /// Edges as face pairs, canonical under face relabelling.
    pub edges: Vec<(usize, usize)>,
    pub bipartite: bool,
    /// Labelled matchings in the class.
    pub count: u64,
    /// Contribution to the coefficient of `λ^v`.
    pub weight: ExactScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusWeight {
    pub genus: usize,
    /// Connected labelled matchings of this genus.
    pub count: u64,
    /// Coefficient of `λ^v` in the genus-`g` free energy.
    pub weight: ExactScalar,
    pub bipartite_count: u64,
    pub bipartite_weight: ExactScalar,
    pub classes: Vec<GraphClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VacuumEnumeration {
    pub v: usize,
    pub matchings: u64,
    pub connected: u64,
    pub by_genus: BTreeMap<usize, GenusWeight>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
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

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<_> = edges
                .iter()
                .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// `Σ_{face labels} Π_f (r_{k_f}/N) Π_{edges} 1/(e_{k_a} + e_{k_b})`.
fn label_sum(faces: usize, edges: &[(usize, usize)], w: &[E], prop: &[Vec<E>]) -> E {
    let d = w.len();
    let mut total = E::zero();
    let mut lab = vec![0usize; faces];
    loop {
        let mut t = E::one();
        for &k in &lab {
            t = t.mul(&w[k]);
        }
        for &(a, b) in edges {
            t = t.mul(&prop[lab[a]][lab[b]]);
        }
        total = total.add(&t);
        let mut i = 0;
        loop {
            if i == faces {
                return total;
            }
            lab[i] += 1;
            if lab[i] < d {
                break;
            }
            lab[i] = 0;
            i += 1;
        }
    }
}

/// Connected vacuum graphs with `v` vertices, weighted by `(−λ)^v/(4^v v!)`
/// times the face-label sum.
pub fn enumerate_vacuum(v: usize, input: &SpectralInput) -> Result<VacuumEnumeration> {
    if v == 0 || v > MAX_VERTICES {
        return Err(QkmError::Unsupported(format!(
            "vacuum enumeration needs 1 ≤ v ≤ {MAX_VERTICES}, got {v}"
        )));
    }
    input.validate()?;
    let e = input.e();
    let n = E::from_int(input.big_n() as i64);
    let w: Vec<E> = input
        .r()
        .iter()
        .map(|&r| E::from_int(r as i64).try_div(&n))
        .collect::<std::result::Result<_, _>>()?;
    let prop: Vec<Vec<E>> = e
        .iter()
        .map(|a| e.iter().map(|b| a.add(b).try_inv()).collect())
        .collect::<std::result::Result<_, _>>()?;

    let mut norm = E::from_int(if v % 2 == 0 { 1 } else { -1 });
    for k in 1..=v {
        norm = norm.scale(&E::ratio(1, 4 * k as i64));
    }

    let all = perfect_matchings(4 * v);
    let matchings = all.len() as u64;
    let mut connected = 0u64;
    let mut classes: BTreeMap<(usize, Vec<(usize, usize)>), (bool, u64)> = BTreeMap::new();
    let mut perm_cache: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for m in all {
        let g = RibbonGraph { v, matching: m };
        if !g.connected() {
            continue;
        }
        connected += 1;
        let f = g.faces();
        let perms = perm_cache.entry(f).or_insert_with(|| permutations(f));
        let key = (f, canonical(&g.edge_faces(), perms));
        let bip = g.bipartite();
        classes.entry(key).or_insert((bip, 0)).1 += 1;
    }

    let mut by_genus: BTreeMap<usize, GenusWeight> = BTreeMap::new();
    for ((faces, edges), (bipartite, count)) in classes {
        let genus = (2 + v - faces) / 2;
        let weight = label_sum(faces, &edges, &w, &prop)
            .mul(&norm)
            .scale(&E::from_int(count as i64));
        let gw = by_genus.entry(genus).or_insert_with(|| GenusWeight {
            genus,
            count: 0,
            weight: E::zero(),
            bipartite_count: 0,
            bipartite_weight: E::zero(),
            classes: vec![],
        });
        gw.count += count;
        gw.weight = gw.weight.add(&weight);
        if bipartite {
            gw.bipartite_count += count;
            gw.bipartite_weight = gw.bipartite_weight.add(&weight);
        }
        gw.classes.push(GraphClass {
            faces,
            edges,
            bipartite,
            count,
            weight,
        });
    }
    Ok(VacuumEnumeration {
        v,
        matchings,
        connected,
        by_genus,
    })
}

impl VacuumEnumeration {
    pub fn weight(&self, genus: usize) -> ExactScalar {
        self.by_genus
            .get(&genus)
            .map_or_else(E::zero, |g| g.weight.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_counts() {
        assert_eq!(perfect_matchings(4).len(), 3);
        assert_eq!(perfect_matchings(8).len(), 105);
        assert_eq!(perfect_matchings(12).len(), 10395);
    }

    #[test]
    fn single_vertex_graphs() {
        let planar = RibbonGraph { v: 1, matching: vec![1, 0, 3, 2] };
        assert_eq!((planar.faces(), planar.genus()), (3, 0));
        let torus = RibbonGraph { v: 1, matching: vec![2, 3, 0, 1] };
        assert_eq!((torus.faces(), torus.genus()), (1, 1));
        assert!(!torus.bipartite());
    }

    #[test]
    fn anchors_at_d1() {
        let inp = SpectralInput::default();
        let one = enumerate_vacuum(1, &inp).unwrap();
        assert_eq!(one.weight(1), E::ratio(-1, 4));
        assert_eq!(one.weight(0), E::ratio(-1, 2));
        let two = enumerate_vacuum(2, &inp).unwrap();
        assert_eq!(two.weight(1), E::ratio(15, 8));
        assert_eq!(two.by_genus[&1].bipartite_weight, E::ratio(1, 8));
        assert_eq!(two.weight(0), E::ratio(9, 8));
    }

    #[test]
    fn rejects_large_v() {
        assert!(enumerate_vacuum(4, &SpectralInput::default()).is_err());
        assert!(enumerate_vacuum(0, &SpectralInput::default()).is_err());
    }
}
