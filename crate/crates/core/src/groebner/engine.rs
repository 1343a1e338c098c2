//! Buchberger's algorithm over free modules `R^r`, `R = ℚ(i)[z_1..z_n]`.
//!
//! A term is a pair (position, monomial). Terms compare position-over-term:
//! lower positions are larger, ties are broken by the monomial order. Ideals
//! are the rank-one case.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::MonomialOrder;
use crate::polyring::{GaussRat, Monomial, Poly};

/// Sort key whose lexicographic order is the term order. Additive in the monomial part.
pub(crate) type Key = SmallVec<[u32; 10]>;

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub pos: u32,
    pub mono: Monomial,
    pub c: GaussRat,
}

/// Terms sorted by descending key, no zeros.
pub(crate) type Elem = Vec<Term>;

type Work = BTreeMap<Key, (u32, Monomial, GaussRat)>;

impl MonomialOrder {
    /// Key of the monomial alone, with a zero position slot.
    pub(crate) fn mono_key(&self, m: &Monomial) -> Key {
        let e = m.exps();
        let mut k: Key = SmallVec::new();
        k.push(0);
        match *self {
            MonomialOrder::DegLex => {
                k.push(m.degree());
                k.extend_from_slice(e);
            }
            MonomialOrder::Lex => k.extend_from_slice(e),
            MonomialOrder::Elimination { block } => {
                let b = block.min(e.len());
                k.push(e[..b].iter().sum());
                k.extend_from_slice(&e[..b]);
                k.push(e[b..].iter().sum());
                k.extend_from_slice(&e[b..]);
            }
        }
        k
    }

    pub(crate) fn term_key(&self, pos: u32, m: &Monomial) -> Key {
        let mut k = self.mono_key(m);
        k[0] = u32::MAX - pos;
        k
    }
}

fn add_keys(a: &Key, b: &Key) -> Key {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
    key: Key,
}

/// Result of a Buchberger run: reduced, monic, sorted by ascending leading term.
#[derive(Clone, Debug)]
pub(crate) struct RawBasis {
    pub elems: Vec<Elem>,
    /// `elems[k] = Σ_j cofs[k][j]·gens[j]` when tracking was requested.
    pub cofs: Option<Vec<Vec<Poly>>>,
}

pub(crate) struct Engine {
    pub order: MonomialOrder,
    pub nvars: usize,
    pub rank: usize,
    pub ngens: usize,
    pub track: bool,
}

impl Engine {
    pub fn elem_from_components(&self, comps: &[Poly]) -> Elem {
        let mut out: Elem = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                out.push(Term {
                    key: self.order.term_key(pos as u32, m),
                    pos: pos as u32,
                    mono: m.clone(),
                    c: c.clone(),
                });
            }
        }
        out.sort_unstable_by(|a, b| b.key.cmp(&a.key));
        out
    }

    pub fn elem_to_components(&self, e: &Elem) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, GaussRat)>> = vec![Vec::new(); self.rank];
        for t in e {
            buckets[t.pos as usize].push((t.mono.clone(), t.c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut ts| {
                ts.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly::from_sorted_terms(self.nvars, ts)
            })
            .collect()
    }

    fn zero_cof(&self) -> Vec<Poly> {
        vec![Poly::zero(self.nvars); self.ngens]
    }

    fn to_work(e: &Elem) -> Work {
        e.iter()
            .map(|t| (t.key.clone(), (t.pos, t.mono.clone(), t.c.clone())))
            .collect()
    }

    /// `work -= f·q·g`, omitting the first `skip` terms of `g`.
    fn sub_mul(&self, work: &mut Work, g: &Elem, skip: usize, f: &GaussRat, q: &Monomial) {
        let qk = self.order.mono_key(q);
        for t in &g[skip..] {
            let key = add_keys(&t.key, &qk);
            let delta = f * &t.c;
            match work.get_mut(&key) {
                Some(entry) => {
                    entry.2 -= &delta;
                    if entry.2.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, (t.pos, t.mono.mul(q), -delta));
                }
            }
        }
    }

    /// Fully reduces `work` by the elements `basis` of `store`.
    /// Returns the remainder and `quot` with `input − rem = Σ quot_j·gens_j` (when tracking).
    fn reduce(
        &self,
        mut work: Work,
        basis: &[usize],
        store: &[Elem],
        cofs: &[Vec<Poly>],
    ) -> (Elem, Option<Vec<Poly>>) {
        let mut rem: Elem = Vec::new();
        let mut quot = if self.track { Some(self.zero_cof()) } else { None };
        while let Some((key, (pos, mono, c))) = work.pop_last() {
            let divisor = basis.iter().copied().find(|&gi| {
                let lt = &store[gi][0];
                lt.pos == pos && lt.mono.divides(&mono)
            });
            match divisor {
                Some(gi) => {
                    let g = &store[gi];
                    let q = g[0].mono.quotient_of(&mono);
                    let f = if g[0].c.is_one() { c } else { &c / &g[0].c };
                    self.sub_mul(&mut work, g, 1, &f, &q);
                    if let Some(quot) = quot.as_mut() {
                        for (acc, cg) in quot.iter_mut().zip(&cofs[gi]) {
                            if !cg.is_zero() {
                                *acc = &*acc + &cg.mul_monomial(&q, &f);
                            }
                        }
                    }
                }
                None => rem.push(Term { key, pos, mono, c }),
            }
        }
        (rem, quot)
    }

    fn make_monic(e: &mut Elem, cof: Option<&mut Vec<Poly>>) {
        let lc = e[0].c.clone();
        if lc.is_one() {
            return;
        }
        let inv = lc.inv().expect("nonzero leading coefficient");
        for t in e.iter_mut() {
            t.c = &t.c * &inv;
        }
        if let Some(cof) = cof {
            for p in cof.iter_mut() {
                *p = p.scale(&inv);
            }
        }
    }

    fn s_poly(&self, a: &Elem, b: &Elem, lcm: &Monomial) -> Work {
        let qa = a[0].mono.quotient_of(lcm);
        let qb = b[0].mono.quotient_of(lcm);
        let mut work = Work::new();
        let neg_one = -GaussRat::one();
        self.sub_mul(&mut work, a, 1, &neg_one, &qa);
        self.sub_mul(&mut work, b, 1, &GaussRat::one(), &qb);
        work
    }

    /// Gebauer–Möller update after adding element `h`.
    fn update(&self, store: &[Elem], g_set: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
        let lh = &store[h][0];
        let ideal = self.rank == 1;
        let cands: Vec<(usize, Monomial)> = g_set
            .iter()
            .copied()
            .filter(|&g| store[g][0].pos == lh.pos)
            .map(|g| (g, store[g][0].mono.lcm(&lh.mono)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g1, l1)) in cands.iter().enumerate() {
            let coprime = ideal && store[*g1][0].mono.is_coprime(&lh.mono);
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l1))
                || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        pairs.retain(|p| {
            !(p.pos == lh.pos
                && lh.mono.divides(&p.lcm)
                && store[p.i][0].mono.lcm(&lh.mono) != p.lcm
                && store[p.j][0].mono.lcm(&lh.mono) != p.lcm)
        });
        for (g, l) in kept {
            if ideal && store[g][0].mono.is_coprime(&lh.mono) {
                continue;
            }
            pairs.push(Pair {
                i: g,
                j: h,
                pos: lh.pos,
                key: self.order.term_key(lh.pos, &l),
                lcm: l,
            });
        }
        g_set.retain(|&g| !(store[g][0].pos == lh.pos && lh.mono.divides(&store[g][0].mono)));
        g_set.push(h);
    }

    /// Reduced Gröbner basis of the submodule generated by `gens`.
    pub fn run(&self, gens: &[Elem]) -> RawBasis {
        debug_assert_eq!(gens.len(), self.ngens);
        let mut store: Vec<Elem> = Vec::new();
        let mut cofs: Vec<Vec<Poly>> = Vec::new();
        let mut g_set: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        let insert = |elem: Elem,
                          cof: Vec<Poly>,
                          store: &mut Vec<Elem>,
                          cofs: &mut Vec<Vec<Poly>>,
                          g_set: &mut Vec<usize>,
                          pairs: &mut Vec<Pair>| {
            let mut elem = elem;
            let mut cof = cof;
            Self::make_monic(&mut elem, if self.track { Some(&mut cof) } else { None });
            store.push(elem);
            cofs.push(cof);
            let h = store.len() - 1;
            self.update(store, g_set, pairs, h);
        };

        for (j, g) in gens.iter().enumerate() {
            if g.is_empty() {
                continue;
            }
            let (rem, quot) = self.reduce(Self::to_work(g), &g_set, &store, &cofs);
            if rem.is_empty() {
                continue;
            }
            let cof = match quot {
                Some(q) => {
                    let mut c: Vec<Poly> = q.iter().map(|p| -p).collect();
                    c[j] = &c[j] + &Poly::one(self.nvars);
                    c
                }
                None => Vec::new(),
            };
            insert(rem, cof, &mut store, &mut cofs, &mut g_set, &mut pairs);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pairs[a], &pairs[b]);
                    pa.key.cmp(&pb.key).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(best);
            let work = self.s_poly(&store[pair.i], &store[pair.j], &pair.lcm);
            let (rem, quot) = self.reduce(work, &g_set, &store, &cofs);
            if rem.is_empty() {
                continue;
            }
            let cof = match quot {
                Some(q) => {
                    // S = qa·g_i − qb·g_j, matching `s_poly`.
                    let qa = store[pair.i][0].mono.quotient_of(&pair.lcm);
                    let qb = store[pair.j][0].mono.quotient_of(&pair.lcm);
                    let one = GaussRat::one();
                    let neg = -GaussRat::one();
                    (0..self.ngens)
                        .map(|k| {
                            let s = &cofs[pair.i][k].mul_monomial(&qa, &one)
                                + &cofs[pair.j][k].mul_monomial(&qb, &neg);
                            &s - &q[k]
                        })
                        .collect()
                }
                None => Vec::new(),
            };
            insert(rem, cof, &mut store, &mut cofs, &mut g_set, &mut pairs);
        }

        self.interreduce(store, cofs, g_set)
    }

    fn interreduce(&self, store: Vec<Elem>, cofs: Vec<Vec<Poly>>, mut g_set: Vec<usize>) -> RawBasis {
        g_set.sort_by(|&a, &b| store[a][0].key.cmp(&store[b][0].key));
        let mut elems = Vec::with_capacity(g_set.len());
        let mut out_cofs = Vec::with_capacity(g_set.len());
        for (k, &g) in g_set.iter().enumerate() {
            let others: Vec<usize> = g_set
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .map(|(_, &x)| x)
                .collect();
            let lead = store[g][0].clone();
            let tail: Elem = store[g][1..].to_vec();
            let (rem, quot) = self.reduce(Self::to_work(&tail), &others, &store, &cofs);
            let mut e = Vec::with_capacity(rem.len() + 1);
            e.push(lead);
            e.extend(rem);
            elems.push(e);
            if let Some(q) = quot {
                out_cofs.push(cofs[g].iter().zip(&q).map(|(c, qq)| c - qq).collect());
            }
        }
        RawBasis {
            elems,
            cofs: if self.track { Some(out_cofs) } else { None },
        }
    }

    /// Normal form of `e` against a finished basis.
    pub fn normal_form(&self, e: &Elem, basis: &RawBasis) -> (Elem, Option<Vec<Poly>>) {
        let idx: Vec<usize> = (0..basis.elems.len()).collect();
        let empty: Vec<Vec<Poly>> = Vec::new();
        let cofs = match (&basis.cofs, self.track) {
            (Some(c), true) => c,
            _ => &empty,
        };
        let engine = Engine {
            order: self.order,
            nvars: self.nvars,
            rank: self.rank,
            ngens: self.ngens,
            track: self.track && basis.cofs.is_some(),
        };
        engine.reduce(Self::to_work(e), &idx, &basis.elems, cofs)
    }
}
