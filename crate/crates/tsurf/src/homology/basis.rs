use super::{intersection, standard_j, CellComplex, Cycle, HomologyError, IntMat, SymplecticBasis};
use std::collections::VecDeque;

// BFS spanning tree of the 1-skeleton: parent edge and its sign (+1 when the
// edge points from the child to the parent).
fn spanning_tree(c: &CellComplex) -> (Vec<Option<(usize, usize, i64)>>, Vec<bool>) {
    let nv = c.num_vertices;
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nv];
    for k in 0..c.num_edges() {
        let tail = (0..nv).find(|&v| c.d1[v][k] == -1);
        let head = (0..nv).find(|&v| c.d1[v][k] == 1);
        if let (Some(t), Some(h)) = (tail, head) {
            adj[t].push((k, h, 1));
            adj[h].push((k, t, -1));
        }
    }
    let mut parent = vec![None; nv];
    let mut in_tree = vec![false; c.num_edges()];
    let mut seen = vec![false; nv];
    let mut queue = VecDeque::new();
    if nv > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(u) = queue.pop_front() {
        for &(k, w, sign) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                // the edge runs u -> w when sign = 1, so from child w to parent u it is reversed
                parent[w] = Some((u, k, -sign));
                in_tree[k] = true;
                queue.push_back(w);
            }
        }
    }
    (parent, in_tree)
}

// edges of a spanning tree of the dual graph avoiding the primal tree
fn dual_tree(c: &CellComplex, in_tree: &[bool]) -> Vec<bool> {
    let nf = c.num_faces;
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for (k, (e, f)) in c.edges.iter().enumerate() {
        if !in_tree[k] && e.polygon != f.polygon {
            adj[e.polygon].push((k, f.polygon));
            adj[f.polygon].push((k, e.polygon));
        }
    }
    let mut used = vec![false; c.num_edges()];
    let mut seen = vec![false; nf];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(k, w) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                used[k] = true;
                queue.push_back(w);
            }
        }
    }
    used
}

fn path_to_root(parent: &[Option<(usize, usize, i64)>], mut v: usize, coeffs: &mut [i64], sign: i64) {
    while let Some((p, k, s)) = parent[v] {
        coeffs[k] += sign * s;
        v = p;
    }
}

/// Generators from the edges outside a tree and a dual cotree.
pub fn tree_cotree_cycles(c: &CellComplex) -> Vec<Cycle> {
    let (parent, in_tree) = spanning_tree(c);
    let in_cotree = dual_tree(c, &in_tree);
    let nv = c.num_vertices;
    let mut out = Vec::new();
    for k in 0..c.num_edges() {
        if in_tree[k] || in_cotree[k] {
            continue;
        }
        let tail = (0..nv).find(|&v| c.d1[v][k] == -1);
        let head = (0..nv).find(|&v| c.d1[v][k] == 1);
        let mut coeffs = vec![0; c.num_edges()];
        coeffs[k] = 1;
        if let (Some(t), Some(h)) = (tail, head) {
            // head -> root -> tail
            path_to_root(&parent, h, &mut coeffs, 1);
            path_to_root(&parent, t, &mut coeffs, -1);
        }
        out.push(Cycle { coeffs });
    }
    out
}

fn form(g: &IntMat, x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi != 0 {
            s += xi * g[i].iter().zip(y).map(|(a, b)| a * b).sum::<i64>();
        }
    }
    s
}

fn axpy(y: &mut [i64], a: i64, x: &[i64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Integral symplectic reduction of a unimodular skew Gram matrix: returns
/// coordinate vectors `a_1..a_g, b_1..b_g`.
pub(crate) fn symplectic_reduce(gram: &IntMat) -> Result<Vec<Vec<i64>>, HomologyError> {
    let n = gram.len();
    let mut rest: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let e = rest.remove(0);
        // Euclid on the pairings ⟨e, r⟩ by unimodular changes among the rest
        let pivot = loop {
            let vals: Vec<i64> = rest.iter().map(|r| form(gram, &e, r)).collect();
            let Some(k) = (0..vals.len()).filter(|&k| vals[k] != 0).min_by_key(|&k| (vals[k].abs(), k)) else {
                return Err(HomologyError::Degenerate);
            };
            let mut changed = false;
            for l in 0..rest.len() {
                if l != k && vals[l] != 0 {
                    let q = vals[l].div_euclid(vals[k]);
                    let pk = rest[k].clone();
                    axpy(&mut rest[l], -q, &pk);
                    changed = true;
                }
            }
            if !changed {
                break k;
            }
        };
        let mut f = rest.remove(pivot);
        match form(gram, &e, &f) {
            1 => {}
            -1 => f.iter_mut().for_each(|x| *x = -*x),
            _ => return Err(HomologyError::Degenerate),
        }
        for r in rest.iter_mut() {
            let (re, rf) = (form(gram, r, &e), form(gram, r, &f));
            axpy(r, -rf, &e);
            axpy(r, re, &f);
        }
        a.push(e);
        b.push(f);
    }
    a.extend(b);
    Ok(a)
}

/// A symplectic basis of `H₁(X, Z)`.
pub fn homology_basis(c: &CellComplex) -> Result<SymplecticBasis, HomologyError> {
    let gens = tree_cotree_cycles(c);
    if gens.is_empty() {
        return Err(HomologyError::GenusZero);
    }
    let duals: Vec<Vec<i64>> = gens.iter().map(|z| c.push_off(z)).collect();
    let gram: IntMat = gens.iter().map(|x| duals.iter().map(|d| c.pair_with_dual(x, d)).collect()).collect();
    let coords = symplectic_reduce(&gram)?;
    let cycles: Vec<Cycle> = coords
        .iter()
        .map(|x| {
            let mut coeffs = vec![0; c.num_edges()];
            for (z, &w) in gens.iter().zip(x) {
                axpy(&mut coeffs, w, &z.coeffs);
            }
            Cycle { coeffs }
        })
        .collect();
    let g = cycles.len() / 2;
    let j: IntMat = cycles.iter().map(|x| cycles.iter().map(|y| intersection(c, x, y)).collect()).collect();
    if j != standard_j(g) {
        return Err(HomologyError::Degenerate);
    }
    Ok(SymplecticBasis { cycles, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::build_complex;
    use crate::surface::{build_double_ngon, build_origami, build_wiman};

    #[test]
    fn torus_basis() {
        let c = build_complex(&build_origami(&[1], &[1]).unwrap());
        let b = homology_basis(&c).unwrap();
        assert_eq!(b.cycles[0].coeffs, vec![1, 0]);
        assert_eq!(b.cycles[1].coeffs, vec![0, 1]);
        assert_eq!(b.j, vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn standard_forms() {
        let b = homology_basis(&build_complex(&build_double_ngon(5).unwrap())).unwrap();
        assert_eq!(b.cycles.len(), 4);
        let b = homology_basis(&build_complex(&build_wiman(3, 2).unwrap())).unwrap();
        assert_eq!(b.cycles.len(), 6);
        assert_eq!(b.j, standard_j(3));
    }

    #[test]
    fn reduction_of_scrambled_form() {
        // J conjugated by an integer unimodular matrix
        let gram = vec![vec![0, 2, 1, 0], vec![-2, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]];
        let v = symplectic_reduce(&gram).unwrap();
        let j: IntMat = v.iter().map(|x| v.iter().map(|y| form(&gram, x, y)).collect()).collect();
        assert_eq!(j, standard_j(2));
    }
}
