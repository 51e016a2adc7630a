//! Chain-level scaffolding for mapping cones.
//!
//! Every object is realized as a bounded complex of projectives: the summand
//! M[s] becomes its two-term resolution P1 -> P0 placed in degrees -s-1, -s.
//! Morphisms lift to chain maps, cones are taken degreewise, and the result
//! is carried back to a sum of shifted indecomposables. The key fact making
//! the last step work is heredity: submodules of projectives are projective,
//! so every complex of projectives splits degreewise into cycles plus a
//! complement mapping isomorphically onto the boundaries, which produces a
//! degreewise-surjective quasi-isomorphism onto the cohomology.

use std::collections::BTreeMap;

use crate::derived::{DObject, Morphism};
use crate::field::{FieldSpec, Mat};
use crate::ind::IndTable;
use crate::quiver::Quiver;
use crate::rep::{
    cokernel, hom_space, image, kernel, map_vector_len, solve_factor_left, solve_factor_right,
    DirectSum, Rep, RepMap,
};

/// A bounded cochain complex; `terms[k]` sits in degree `lo + k`.
#[derive(Clone)]
pub struct Complex {
    pub field: FieldSpec,
    pub lo: i64,
    pub terms: Vec<Rep>,
    pub diffs: Vec<RepMap>,
}

impl Complex {
    pub fn empty(field: FieldSpec) -> Complex {
        Complex { field, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn term_or_zero(&self, q: &Quiver, d: i64) -> Rep {
        let idx = d - self.lo;
        if idx >= 0 && (idx as usize) < self.terms.len() {
            self.terms[idx as usize].clone()
        } else {
            Rep::zero(q, self.field)
        }
    }

    pub fn diff_or_zero(&self, q: &Quiver, d: i64) -> RepMap {
        let idx = d - self.lo;
        if idx >= 0 && (idx as usize) + 1 < self.terms.len() {
            self.diffs[idx as usize].clone()
        } else {
            RepMap::zero(&self.term_or_zero(q, d), &self.term_or_zero(q, d + 1))
        }
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i64 - 1))
        }
    }

    pub fn is_valid(&self, q: &Quiver) -> bool {
        for d in &self.diffs {
            if !d.is_valid(q) {
                return false;
            }
        }
        for k in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[k + 1].compose(&self.diffs[k]).is_zero() {
                return false;
            }
        }
        true
    }

    /// The shift C[1]: degree i holds the old degree i+1, differentials
    /// negated.
    pub fn shift_one(&self) -> Complex {
        Complex {
            field: self.field,
            lo: self.lo - 1,
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.neg()).collect(),
        }
    }
}

/// A chain map, stored sparsely by degree; absent components are zero.
#[derive(Clone, Default)]
pub struct ChainMap {
    pub comps: BTreeMap<i64, RepMap>,
}

impl ChainMap {
    pub fn add_comp(&mut self, d: i64, m: RepMap) {
        match self.comps.get_mut(&d) {
            Some(cur) => *cur = cur.add(&m),
            None => {
                self.comps.insert(d, m);
            }
        }
    }

    pub fn comp_or_zero(&self, q: &Quiver, src: &Complex, tgt: &Complex, d: i64) -> RepMap {
        match self.comps.get(&d) {
            Some(m) => m.clone(),
            None => RepMap::zero(&src.term_or_zero(q, d), &tgt.term_or_zero(q, d)),
        }
    }

    pub fn is_valid(&self, q: &Quiver, src: &Complex, tgt: &Complex) -> bool {
        let range = match src.degree_range() {
            Some(r) => r,
            None => return true,
        };
        for d in range.0 - 1..=range.1 {
            let lhs = tgt
                .diff_or_zero(q, d)
                .compose(&self.comp_or_zero(q, src, tgt, d));
            let rhs = self
                .comp_or_zero(q, src, tgt, d + 1)
                .compose(&src.diff_or_zero(q, d));
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// a ∘ b with b : src -> mid and a : mid -> tgt.
pub fn chain_compose(
    q: &Quiver,
    src: &Complex,
    mid: &Complex,
    tgt: &Complex,
    a: &ChainMap,
    b: &ChainMap,
) -> ChainMap {
    let mut out = ChainMap::default();
    for (&d, bc) in &b.comps {
        let ac = a.comp_or_zero(q, mid, tgt, d);
        out.add_comp(d, ac.compose(bc));
    }
    let _ = src;
    out
}

/// The standard complex of a shifted sum, with per-degree direct-sum
/// bookkeeping for each item's P1 and P0 slots.
pub struct StdComplex {
    pub obj: DObject,
    pub cplx: Complex,
    sums: Vec<DirectSum>,
    /// per item: (degree, part index within that degree's sum)
    p0_slot: Vec<(i64, usize)>,
    p1_slot: Vec<(i64, usize)>,
}

impl StdComplex {
    pub fn p0_inj(&self, item: usize) -> RepMap {
        let (d, part) = self.p0_slot[item];
        self.sums[(d - self.cplx.lo) as usize].injection(part)
    }

    pub fn p0_proj(&self, item: usize) -> RepMap {
        let (d, part) = self.p0_slot[item];
        self.sums[(d - self.cplx.lo) as usize].projection(part)
    }

    pub fn p1_inj(&self, item: usize) -> RepMap {
        let (d, part) = self.p1_slot[item];
        self.sums[(d - self.cplx.lo) as usize].injection(part)
    }

    pub fn p1_proj(&self, item: usize) -> RepMap {
        let (d, part) = self.p1_slot[item];
        self.sums[(d - self.cplx.lo) as usize].projection(part)
    }
}

pub fn std_complex(table: &IndTable, x: &DObject) -> StdComplex {
    let q = &table.q;
    let field = table.field;
    if x.is_zero() {
        return StdComplex {
            obj: x.clone(),
            cplx: Complex::empty(field),
            sums: Vec::new(),
            p0_slot: Vec::new(),
            p1_slot: Vec::new(),
        };
    }
    let lo = x.items.iter().map(|&(_, s)| -s - 1).min().unwrap();
    let hi = x.items.iter().map(|&(_, s)| -s).max().unwrap();
    let mut p0_slot = vec![(0i64, 0usize); x.items.len()];
    let mut p1_slot = vec![(0i64, 0usize); x.items.len()];
    let mut sums = Vec::new();
    let mut terms = Vec::new();
    for d in lo..=hi {
        let mut parts: Vec<&Rep> = Vec::new();
        for (k, &(ind, s)) in x.items.iter().enumerate() {
            let res = table.resolution(ind);
            if -s - 1 == d {
                p1_slot[k] = (d, parts.len());
                parts.push(&res.p1);
            }
            if -s == d {
                p0_slot[k] = (d, parts.len());
                parts.push(&res.p0);
            }
        }
        let ds = DirectSum::new(q, field, &parts);
        terms.push(ds.rep.clone());
        sums.push(ds);
    }
    let mut sc = StdComplex {
        obj: x.clone(),
        cplx: Complex { field, lo, terms, diffs: Vec::new() },
        sums,
        p0_slot,
        p1_slot,
    };
    let mut diffs = Vec::new();
    for d in lo..hi {
        let src = sc.cplx.terms[(d - lo) as usize].clone();
        let tgt = sc.cplx.terms[(d - lo) as usize + 1].clone();
        let mut diff = RepMap::zero(&src, &tgt);
        for (k, &(ind, s)) in x.items.iter().enumerate() {
            if -s - 1 == d {
                let res = table.resolution(ind);
                diff = diff.add(&sc.p0_inj(k).compose(&res.d).compose(&sc.p1_proj(k)));
            }
        }
        diffs.push(diff);
    }
    sc.cplx.diffs = diffs;
    debug_assert!(sc.cplx.is_valid(&table.q));
    sc
}

/// Realize a degree-0 morphism as a chain map between standard complexes.
pub fn realize(table: &IndTable, sx: &StdComplex, sy: &StdComplex, f: &Morphism) -> ChainMap {
    assert_eq!(f.degree, 0);
    let q = &table.q;
    let mut out = ChainMap::default();
    for (l, &(jn, t)) in sy.obj.items.iter().enumerate() {
        for (k, &(im, s)) in sx.obj.items.iter().enumerate() {
            let c = f.mat.get(l, k);
            if c == 0 {
                continue;
            }
            let res_m = table.resolution(im);
            let res_n = table.resolution(jn);
            if t == s {
                let phi = &table.hom_basis(im, jn)[0];
                let phi0 = solve_factor_left(q, &res_n.eps, &phi.compose(&res_m.eps))
                    .expect("lift through surjection onto projective cover");
                let phi1 = solve_factor_left(q, &res_n.d, &phi0.compose(&res_m.d))
                    .expect("lift through the syzygy");
                out.add_comp(
                    -s,
                    sy.p0_inj(l).compose(&phi0).compose(&sx.p0_proj(k)).scale(c),
                );
                out.add_comp(
                    -s - 1,
                    sy.p1_inj(l).compose(&phi1).compose(&sx.p1_proj(k)).scale(c),
                );
            } else if t == s + 1 {
                let z = table.ext_space(im, jn).basis_cocycle(0);
                let cmap = res_m.cocycle_to_map(q, &table.reps[im], &table.reps[jn], &z);
                let g = solve_factor_left(q, &res_n.eps, &cmap)
                    .expect("projective source lifts through the cover");
                out.add_comp(
                    -s - 1,
                    sy.p0_inj(l).compose(&g).compose(&sx.p1_proj(k)).scale(c),
                );
            } else {
                panic!("nonzero entry in an empty block");
            }
        }
    }
    debug_assert!(out.is_valid(q, &sx.cplx, &sy.cplx));
    out
}

/// Mapping cone data: the cone complex, the inclusion of the target, and the
/// projection onto the shifted source.
pub struct Cone {
    pub cone: Complex,
    pub incl: ChainMap,
    pub proj: ChainMap,
    pub shifted_src: Complex,
}

pub fn mapping_cone(q: &Quiver, src: &Complex, tgt: &Complex, f: &ChainMap) -> Cone {
    let field = src.field;
    let lo_opts: Vec<i64> = src
        .degree_range()
        .map(|(a, _)| a - 1)
        .into_iter()
        .chain(tgt.degree_range().map(|(a, _)| a))
        .collect();
    let hi_opts: Vec<i64> = src
        .degree_range()
        .map(|(_, b)| b - 1)
        .into_iter()
        .chain(tgt.degree_range().map(|(_, b)| b))
        .collect();
    if lo_opts.is_empty() {
        return Cone {
            cone: Complex::empty(field),
            incl: ChainMap::default(),
            proj: ChainMap::default(),
            shifted_src: src.shift_one(),
        };
    }
    let lo = *lo_opts.iter().min().unwrap();
    let hi = *hi_opts.iter().max().unwrap();
    let mut terms = Vec::new();
    let mut sums = Vec::new();
    for d in lo..=hi {
        let a = src.term_or_zero(q, d + 1);
        let b = tgt.term_or_zero(q, d);
        let ds = DirectSum::new(q, field, &[&a, &b]);
        terms.push(ds.rep.clone());
        sums.push(ds);
    }
    let mut diffs = Vec::new();
    for d in lo..hi {
        let i = (d - lo) as usize;
        let mut diff = RepMap::zero(&terms[i], &terms[i + 1]);
        // [[-d_src, 0], [f, d_tgt]]
        diff = diff.add(
            &sums[i + 1]
                .injection(0)
                .compose(&src.diff_or_zero(q, d + 1).neg())
                .compose(&sums[i].projection(0)),
        );
        diff = diff.add(
            &sums[i + 1]
                .injection(1)
                .compose(&f.comp_or_zero(q, src, tgt, d + 1))
                .compose(&sums[i].projection(0)),
        );
        diff = diff.add(
            &sums[i + 1]
                .injection(1)
                .compose(&tgt.diff_or_zero(q, d))
                .compose(&sums[i].projection(1)),
        );
        diffs.push(diff);
    }
    let cone = Complex { field, lo, terms, diffs };
    debug_assert!(cone.is_valid(q));
    let mut incl = ChainMap::default();
    let mut proj = ChainMap::default();
    for d in lo..=hi {
        let i = (d - lo) as usize;
        incl.add_comp(d, sums[i].injection(1));
        proj.add_comp(d, sums[i].projection(0));
    }
    let shifted_src = src.shift_one();
    debug_assert!(incl.is_valid(q, tgt, &cone));
    debug_assert!(proj.is_valid(q, &cone, &shifted_src));
    Cone { cone, incl, proj, shifted_src }
}

/// Formality data of a complex of projectives: its cohomology as a shifted
/// sum, and a degreewise-surjective quasi-isomorphism onto the cohomology
/// complex (zero differentials).
pub struct Formal {
    pub h_obj: DObject,
    pub h_cplx: Complex,
    pub q_map: ChainMap,
    /// Per item of `h_obj`: degree, inclusion of the indecomposable into the
    /// cohomology term, and the matching projection.
    pub item_degree: Vec<i64>,
    pub item_incl: Vec<RepMap>,
    pub item_proj: Vec<RepMap>,
}

pub fn formalize(table: &IndTable, c: &Complex) -> Formal {
    let q = &table.q;
    let field = table.field;
    let range = match c.degree_range() {
        Some(r) => r,
        None => {
            return Formal {
                h_obj: DObject::zero(),
                h_cplx: Complex::empty(field),
                q_map: ChainMap::default(),
                item_degree: Vec::new(),
                item_incl: Vec::new(),
                item_proj: Vec::new(),
            }
        }
    };
    let mut h_terms = Vec::new();
    let mut q_map = ChainMap::default();
    let mut raw_items: Vec<((usize, i64), i64, RepMap, RepMap)> = Vec::new();
    for d in range.0..=range.1 {
        let diff = c.diff_or_zero(q, d);
        let prev = c.diff_or_zero(q, d - 1);
        let (_, k_incl) = kernel(q, &diff);
        let (_, im_incl) = image(q, &prev);
        // boundaries land in cycles
        let j = solve_factor_left(q, &k_incl, &im_incl).expect("im d ⊆ ker d");
        let (h, pr) = cokernel(q, &j);
        // split off a complement of the cycles: a section of the surjection
        // onto the boundaries out of this degree (projective by heredity)
        let (_, im_out_incl) = image(q, &diff);
        let dres = solve_factor_left(q, &im_out_incl, &diff).expect("corestriction");
        let sec = solve_factor_left(q, &diff, &im_out_incl)
            .expect("surjection onto a projective splits");
        let e = sec.compose(&dres);
        let id = RepMap::identity(q, &c.term_or_zero(q, d));
        let pi = solve_factor_left(q, &k_incl, &id.add(&e.neg()))
            .expect("1 - e lands in the cycles");
        q_map.add_comp(d, pr.compose(&pi));
        // identify the cohomology with a sum of intervals
        let split = table.split(&h);
        for (k, &part) in split.parts.iter().enumerate() {
            raw_items.push((
                (part, -d),
                d,
                split.incls[k].clone(),
                split.projs[k].clone(),
            ));
        }
        h_terms.push(h);
    }
    raw_items.sort_by(|a, b| a.0.cmp(&b.0));
    let h_obj = DObject { items: raw_items.iter().map(|r| r.0).collect() };
    let h_cplx = Complex {
        field,
        lo: range.0,
        diffs: h_terms
            .windows(2)
            .map(|w| RepMap::zero(&w[0], &w[1]))
            .collect(),
        terms: h_terms,
    };
    debug_assert!(q_map.is_valid(q, c, &h_cplx));
    Formal {
        h_obj,
        h_cplx,
        q_map,
        item_degree: raw_items.iter().map(|r| r.1).collect(),
        item_incl: raw_items.iter().map(|r| r.2.clone()).collect(),
        item_proj: raw_items.iter().map(|r| r.3.clone()).collect(),
    }
}

/// Read off the morphism `sx.obj -> formal.h_obj` represented by a chain map
/// `g : sx.cplx -> c`, where `formal` describes `c`.
pub fn extract_via_formal(
    table: &IndTable,
    sx: &StdComplex,
    c: &Complex,
    formal: &Formal,
    g: &ChainMap,
) -> Morphism {
    let q = &table.q;
    let qg = chain_compose(q, &sx.cplx, c, &formal.h_cplx, &formal.q_map, g);
    let mut out = Morphism::zero(table, &sx.obj, &formal.h_obj, 0);
    for (l, &(jn, t)) in formal.h_obj.items.iter().enumerate() {
        for (k, &(im, s)) in sx.obj.items.iter().enumerate() {
            if t == s {
                let c0 = formal.item_proj[l]
                    .compose(&qg.comp_or_zero(q, &sx.cplx, &formal.h_cplx, -s))
                    .compose(&sx.p0_inj(k));
                let res_m = table.resolution(im);
                let phi = solve_factor_right(q, &res_m.eps, &c0)
                    .expect("chain map into zero differentials factors through cohomology");
                out.mat.set(l, k, table.hom_scalar(im, jn, &phi));
            } else if t == s + 1 {
                let g1 = formal.item_proj[l]
                    .compose(&qg.comp_or_zero(q, &sx.cplx, &formal.h_cplx, -s - 1))
                    .compose(&sx.p1_inj(k));
                let res_m = table.resolution(im);
                let z = res_m.map_to_cocycle(q, &table.reps[im], &table.reps[jn], &g1);
                out.mat.set(l, k, table.ext_scalar(im, jn, &z));
            }
        }
    }
    debug_assert!(out.is_valid(table));
    out
}

/// Read off the morphism represented by a chain map between two standard
/// complexes (the target complex may carry negated differentials, as after a
/// shift; the block formulas are unaffected).
pub fn extract_std_std(
    table: &IndTable,
    sx: &StdComplex,
    sy: &StdComplex,
    g: &ChainMap,
) -> Morphism {
    let q = &table.q;
    let mut out = Morphism::zero(table, &sx.obj, &sy.obj, 0);
    for (l, &(jn, t)) in sy.obj.items.iter().enumerate() {
        let res_n = table.resolution(jn);
        for (k, &(im, s)) in sx.obj.items.iter().enumerate() {
            let res_m = table.resolution(im);
            if t == s {
                let f0 = sy
                    .p0_proj(l)
                    .compose(&g.comp_or_zero(q, &sx.cplx, &sy.cplx, -s))
                    .compose(&sx.p0_inj(k));
                let phi = solve_factor_right(q, &res_m.eps, &res_n.eps.compose(&f0))
                    .expect("hom block factors through the cover");
                out.mat.set(l, k, table.hom_scalar(im, jn, &phi));
            } else if t == s + 1 {
                let g1 = sy
                    .p0_proj(l)
                    .compose(&g.comp_or_zero(q, &sx.cplx, &sy.cplx, -s - 1))
                    .compose(&sx.p1_inj(k));
                let z = res_m.map_to_cocycle(
                    q,
                    &table.reps[im],
                    &table.reps[jn],
                    &res_n.eps.compose(&g1),
                );
                out.mat.set(l, k, table.ext_scalar(im, jn, &z));
            }
        }
    }
    debug_assert!(out.is_valid(table));
    out
}

/// Lift the canonical quasi-isomorphism: find R : std(H) -> c with
/// q_map ∘ R equal to the evaluation map std(H) -> h_cplx. Solvable because
/// std(H) is degreewise projective and q_map is a degreewise-surjective
/// quasi-isomorphism (its kernel is acyclic).
pub fn std_lift(table: &IndTable, sh: &StdComplex, c: &Complex, formal: &Formal) -> ChainMap {
    let q = &table.q;
    let field = table.field;
    let range = match sh.cplx.degree_range() {
        Some(r) => r,
        None => return ChainMap::default(),
    };

    // evaluation map A : std(H) -> h_cplx
    let mut a_map = ChainMap::default();
    for (k, &(ind, _)) in sh.obj.items.iter().enumerate() {
        let d = formal.item_degree[k];
        let res = table.resolution(ind);
        a_map.add_comp(
            d,
            formal.item_incl[k].compose(&res.eps).compose(&sh.p0_proj(k)),
        );
    }
    debug_assert!(a_map.is_valid(q, &sh.cplx, &formal.h_cplx));

    // unknowns: hom-space coordinates of R^d per degree
    let degs: Vec<i64> = (range.0..=range.1).collect();
    let mut bases: Vec<Vec<RepMap>> = Vec::new();
    let mut offsets = vec![0usize];
    for &d in &degs {
        let b = hom_space(q, &sh.cplx.term_or_zero(q, d), &c.term_or_zero(q, d));
        offsets.push(offsets.last().unwrap() + b.len());
        bases.push(b);
    }
    let nvars = *offsets.last().unwrap();

    // rows: per degree, Q∘R = A (into h term) and d_c∘R - R∘d_std = 0
    let mut row_blocks: Vec<(i64, bool, usize)> = Vec::new(); // (degree, is_q_eq, len)
    let mut total_rows = 0;
    for &d in &degs {
        let l1 = map_vector_len(
            &sh.cplx.term_or_zero(q, d),
            &formal.h_cplx.term_or_zero(q, d),
        );
        row_blocks.push((d, true, l1));
        total_rows += l1;
        let l2 = map_vector_len(&sh.cplx.term_or_zero(q, d), &c.term_or_zero(q, d + 1));
        row_blocks.push((d, false, l2));
        total_rows += l2;
    }

    let mut mat = Mat::zeros(field, total_rows, nvars);
    let mut rhs = Mat::zeros(field, total_rows, 1);
    let mut row0 = 0;
    for &(d, is_q, len) in &row_blocks {
        let di = (d - range.0) as usize;
        if is_q {
            // Q_d ∘ R_d  =  A_d
            let qd = formal
                .q_map
                .comp_or_zero(q, c, &formal.h_cplx, d);
            for (bj, b) in bases[di].iter().enumerate() {
                let v = qd.compose(b).to_vector();
                for (i, &x) in v.iter().enumerate() {
                    mat.set(row0 + i, offsets[di] + bj, x);
                }
            }
            let av = a_map
                .comp_or_zero(q, &sh.cplx, &formal.h_cplx, d)
                .to_vector();
            for (i, &x) in av.iter().enumerate() {
                rhs.set(row0 + i, 0, x);
            }
        } else {
            // d_c ∘ R_d - R_{d+1} ∘ d_std = 0
            let dc = c.diff_or_zero(q, d);
            for (bj, b) in bases[di].iter().enumerate() {
                let v = dc.compose(b).to_vector();
                for (i, &x) in v.iter().enumerate() {
                    mat.set(row0 + i, offsets[di] + bj, x);
                }
            }
            if di + 1 < bases.len() {
                let dstd = sh.cplx.diff_or_zero(q, d);
                for (bj, b) in bases[di + 1].iter().enumerate() {
                    let v = b.compose(&dstd).neg().to_vector();
                    for (i, &x) in v.iter().enumerate() {
                        let cur = mat.get(row0 + i, offsets[di + 1] + bj);
                        mat.set(row0 + i, offsets[di + 1] + bj, field.add(cur, x));
                    }
                }
            }
        }
        row0 += len;
    }
    let sol = mat.solve(&rhs).expect("chain lift exists");

    let mut out = ChainMap::default();
    for (di, &d) in degs.iter().enumerate() {
        let mut acc = RepMap::zero(&sh.cplx.term_or_zero(q, d), &c.term_or_zero(q, d));
        for (bj, b) in bases[di].iter().enumerate() {
            acc = acc.add(&b.scale(sol.get(offsets[di] + bj, 0)));
        }
        out.add_comp(d, acc);
    }
    debug_assert!(out.is_valid(q, &sh.cplx, c));
    out
}

/// An exact triangle x -> y -> c -> x[1] presented by its three morphisms.
pub struct Triangle {
    pub c_obj: DObject,
    /// y -> c
    pub incl: Morphism,
    /// c -> x[1]
    pub proj: Morphism,
}

/// Complete a degree-0 morphism to an exact triangle via its mapping cone.
pub fn cone_triangle(table: &IndTable, f: &Morphism) -> Triangle {
    assert_eq!(f.degree, 0);
    let q = &table.q;
    let sx = std_complex(table, &f.source);
    let sy = std_complex(table, &f.target);
    let fc = realize(table, &sx, &sy, f);
    let cone = mapping_cone(q, &sx.cplx, &sy.cplx, &fc);
    let formal = formalize(table, &cone.cone);
    let incl = extract_via_formal(table, &sy, &cone.cone, &formal, &cone.incl);
    let sh = std_complex(table, &formal.h_obj);
    let lift = std_lift(table, &sh, &cone.cone, &formal);
    let sx1 = std_complex(table, &f.source.shift(1));
    let to_shift = chain_compose(q, &sh.cplx, &cone.cone, &cone.shifted_src, &cone.proj, &lift);
    let proj = extract_std_std(table, &sh, &sx1, &to_shift);
    Triangle { c_obj: formal.h_obj, incl, proj }
}
