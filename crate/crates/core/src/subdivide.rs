//! Barycentric subdivision of fibered complexes.
//!
//! A k-simplex of the subdivision lying inside the m-simplex σ is a chain
//! of vertex subsets `S₀ ⊊ … ⊊ S_k = {0..m}`; its j-th vertex is the
//! barycenter of the face of σ spanned by `S_j`. Dropping `S_i` for `i < k`
//! stays inside σ; dropping `S_k` moves to the face of σ spanned by
//! `S_{k-1}`.
//!
//! Vertex families keep their atoms. Every instance of positive dimension
//! gets a fresh atom for its barycenter, with the weight of the atom it
//! came from.

use std::collections::BTreeMap;

use crate::complex::{AtomId, Face, FamilyId, FiberedComplex, PartialHolonomy, SimplexFamily, Transversal};

type Chain = Vec<u32>;

/// Strictly increasing chains of nonempty subsets of `{0..m}` ending at the full set.
fn chains(m: usize) -> Vec<Chain> {
    let full: u32 = (1 << (m + 1)) - 1;
    let mut out = Vec::new();
    let mut stack: Vec<Chain> = vec![vec![full]];
    while let Some(c) = stack.pop() {
        let first = c[0];
        // proper nonempty subsets of `first`
        let mut sub = (first - 1) & first;
        while sub != 0 {
            let mut next = Vec::with_capacity(c.len() + 1);
            next.push(sub);
            next.extend_from_slice(&c);
            stack.push(next);
            sub = (sub - 1) & first;
        }
        out.push(c);
    }
    out.sort();
    out
}

/// Face of a family spanned by the vertex slots in `keep`, with the composite atom map.
fn sub_family(c: &FiberedComplex, dim: usize, fam: FamilyId, keep: u32) -> (usize, FamilyId, PartialHolonomy) {
    let f = c.family(dim, fam);
    let mut map = PartialHolonomy::identity(f.base.iter().copied());
    let (mut d, mut cur) = (dim, fam);
    for v in (0..=dim).rev() {
        if keep & (1 << v) == 0 {
            let face = &c.family(d, cur).faces[v];
            map = map.then(&face.map);
            cur = face.target;
            d -= 1;
        }
    }
    (d, cur, map)
}

/// Relabels the bits of `mask` (a subset of `keep`) by their rank inside `keep`.
fn compress(mask: u32, keep: u32) -> u32 {
    let mut out = 0;
    let mut rank = 0;
    for b in 0..32 {
        if keep & (1 << b) != 0 {
            if mask & (1 << b) != 0 {
                out |= 1 << rank;
            }
            rank += 1;
        }
    }
    out
}

/// Subdivision together with the original atom of every atom of the result.
pub fn barycentric_subdivide_with_origin(c: &FiberedComplex) -> (FiberedComplex, Vec<AtomId>) {
    let mut transversal: Transversal = c.transversal().clone();
    let mut origin: Vec<AtomId> = (0..transversal.len()).collect();
    // barycenter atom of every instance
    let mut bary: BTreeMap<(usize, FamilyId, AtomId), AtomId> = BTreeMap::new();
    for n in 0..c.num_dims() {
        for inst in c.instances(n) {
            let a = if n == 0 {
                inst.atom
            } else {
                let w = c.transversal().weight(inst.atom).clone();
                origin.push(inst.atom);
                transversal.push(w)
            };
            bary.insert((n, inst.family, inst.atom), a);
        }
    }

    // new families in dimension k, keyed by (m, G, chain)
    let top = c.num_dims();
    let mut keys: Vec<Vec<(usize, FamilyId, Chain)>> = vec![Vec::new(); top];
    for m in 0..top {
        let cs = chains(m);
        for g in 0..c.families(m).len() {
            for ch in &cs {
                keys[ch.len() - 1].push((m, g, ch.clone()));
            }
        }
    }
    for ks in &mut keys {
        ks.sort();
    }
    let index: Vec<BTreeMap<(usize, FamilyId, Chain), FamilyId>> = keys
        .iter()
        .map(|ks| ks.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
        .collect();

    let mut families: Vec<Vec<SimplexFamily>> = Vec::with_capacity(top);
    for (k, ks) in keys.iter().enumerate() {
        let mut out = Vec::with_capacity(ks.len());
        for (m, g, ch) in ks {
            let (m, g) = (*m, *g);
            let base_g = &c.family(m, g).base;
            let here = |t: AtomId| bary[&(m, g, t)];
            let base: Vec<AtomId> = base_g.iter().map(|&t| here(t)).collect();
            let mut faces = Vec::new();
            if k > 0 {
                for i in 0..k {
                    let mut sub = ch.clone();
                    sub.remove(i);
                    let target = index[k - 1][&(m, g, sub)];
                    faces.push(Face::new(target, PartialHolonomy::new(base.iter().map(|&a| (a, a)))));
                }
                let keep = ch[k - 1];
                let (d, g2, map) = sub_family(c, m, g, keep);
                let sub: Chain = ch[..k].iter().map(|&s| compress(s, keep)).collect();
                let target = index[k - 1][&(d, g2, sub)];
                let pairs = base_g.iter().map(|&t| {
                    let s = map.apply(t).expect("face maps are total");
                    (here(t), bary[&(d, g2, s)])
                });
                faces.push(Face::new(target, PartialHolonomy::new(pairs)));
            }
            out.push(SimplexFamily::new(k, base, faces));
        }
        families.push(out);
    }
    let sd = FiberedComplex::with_tight_bound(transversal, families).expect("subdivision is well formed");
    (sd, origin)
}

pub fn barycentric_subdivide(c: &FiberedComplex) -> FiberedComplex {
    barycentric_subdivide_with_origin(c).0
}

/// Leaf partition of `sd` pushed through `origin`, restricted to atoms that
/// carry an instance, blocks sorted.
pub fn pushed_leaves(sd: &FiberedComplex, origin: &[AtomId]) -> Vec<Vec<AtomId>> {
    let used = used_atoms(sd);
    let mut blocks: Vec<Vec<AtomId>> = sd
        .leaf_decomposition()
        .into_iter()
        .filter(|b| b.iter().any(|a| used[*a]))
        .map(|b| {
            let mut v: Vec<AtomId> = b.iter().map(|&a| origin[a]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    blocks.sort();
    blocks
}

/// Leaf partition restricted to atoms that carry an instance.
pub fn used_leaves(c: &FiberedComplex) -> Vec<Vec<AtomId>> {
    let used = used_atoms(c);
    let mut blocks: Vec<Vec<AtomId>> =
        c.leaf_decomposition().into_iter().filter(|b| b.iter().any(|a| used[*a])).collect();
    blocks.sort();
    blocks
}

fn used_atoms(c: &FiberedComplex) -> Vec<bool> {
    let mut used = vec![false; c.transversal().len()];
    for fams in c.all_families() {
        for f in fams {
            for &a in &f.base {
                used[a] = true;
            }
        }
    }
    used
}
