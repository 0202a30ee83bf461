#![allow(dead_code)]

use bcl_core::certify::GraphTriple;
use bcl_core::Face;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random valid triple on `2s - 1` vertices. For each pair `{i, j}` a
/// partition of `U` into `s` blocks is drawn with a random spanning tree (plus
/// a few extra edges) in each block; those edges go into `G_i` and `G_j`.
/// Draws that miss a hypothesis are rejected.
pub fn random_graph_triple<R: Rng>(rng: &mut R, s: usize) -> GraphTriple {
    let n = 2 * s - 1;
    let verts: Vec<usize> = (0..n).collect();
    let u = Face::from_vertices(verts.clone()).unwrap();
    loop {
        let mut edges: [Vec<(usize, usize)>; 3] = Default::default();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut order = verts.clone();
            order.shuffle(rng);
            let mut blocks: Vec<Vec<usize>> = order[..s].iter().map(|&v| vec![v]).collect();
            for &v in &order[s..] {
                blocks[rng.gen_range(0..s)].push(v);
            }
            for b in &blocks {
                for k in 1..b.len() {
                    let e = (b[rng.gen_range(0..k)], b[k]);
                    edges[i].push(e);
                    edges[j].push(e);
                }
                if b.len() > 2 && rng.gen_bool(0.3) {
                    let e = (b[0], b[b.len() - 1]);
                    edges[i].push(e);
                    edges[j].push(e);
                }
            }
        }
        let t = GraphTriple::new(u, [&edges[0], &edges[1], &edges[2]], s).unwrap();
        if t.check_hypotheses().is_ok() {
            return t;
        }
    }
}

/// Connected components by union-find.
pub fn union_find_components(vertices: &[usize], edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let idx = |v: usize| vertices.iter().position(|&w| w == v);
    let mut count = vertices.len();
    for &(a, b) in edges {
        if let (Some(x), Some(y)) = (idx(a), idx(b)) {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            if rx != ry {
                parent[rx] = ry;
                count -= 1;
            }
        }
    }
    count
}
