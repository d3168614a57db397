//! Manin symbol presentation of weight 2 modular symbols for `Gamma_0(N)`,
//! sign `+1`.

use std::collections::HashMap;
use std::sync::Arc;

use super::field::{axpy, sparse_rref, Field, SparseRow};
use super::heilbronn::heilbronn_merel;
use super::p1::P1List;
use crate::exactmath::gcd_u64;

/// Field independent part: `P^1(Z/N)` and the quotient by the two term
/// relations `x + xS = 0`, `x = x eta`.
#[derive(Debug)]
pub struct Presentation {
    pub p1: P1List,
    /// symbol -> (generator, sign is negative), or `None` if it vanishes
    pub sym_gen: Vec<Option<(usize, bool)>>,
    /// generator -> representative symbol
    pub gen_rep: Vec<usize>,
}

impl Presentation {
    pub fn new(n: u64) -> Self {
        let p1 = P1List::new(n);
        let len = p1.len();
        let mut sign: Vec<Option<bool>> = vec![None; len];
        let mut sym_gen: Vec<Option<(usize, bool)>> = vec![None; len];
        let mut gen_rep = Vec::new();
        let mut seen = vec![false; len];
        for start in 0..len {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            let mut zero = false;
            sign[start] = Some(false);
            seen[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                let s = sign[x].unwrap();
                let (c, d) = p1.rep(x);
                let (c, d) = (c as i64, d as i64);
                // x S = (d : -c) equals -x; x eta = (-c : d) equals x
                for (y, neg) in [(p1.index_of(d, -c).unwrap(), !s), (p1.index_of(-c, d).unwrap(), s)] {
                    match sign[y] {
                        None => {
                            sign[y] = Some(neg);
                            seen[y] = true;
                            orbit.push(y);
                        }
                        Some(t) if t != neg => zero = true,
                        _ => {}
                    }
                }
                k += 1;
            }
            if zero {
                continue;
            }
            let g = gen_rep.len();
            gen_rep.push(start);
            for &x in &orbit {
                sym_gen[x] = Some((g, sign[x].unwrap()));
            }
        }
        Presentation { p1, sym_gen, gen_rep }
    }

    pub fn level(&self) -> u64 {
        self.p1.level()
    }

    pub fn ngens(&self) -> usize {
        self.gen_rep.len()
    }
}

/// The plus quotient over a field, its cuspidal subspace, and Hecke action.
pub struct ManinSymbolSpace<F: Field> {
    pub pres: Arc<Presentation>,
    pub field: F,
    /// generator -> vector in the quotient basis
    gen_expr: Vec<SparseRow<F::E>>,
    /// quotient basis index -> generator
    pub basis_gen: Vec<usize>,
    /// cuspidal basis in quotient coordinates
    pub cusp_basis: Vec<SparseRow<F::E>>,
    /// quotient coordinates read off as cuspidal coordinates
    cusp_coord: Vec<usize>,
}

impl<F: Field> ManinSymbolSpace<F> {
    pub fn new(pres: Arc<Presentation>, field: F) -> Self {
        let f = &field;
        let ng = pres.ngens();
        let p1 = &pres.p1;
        // three term relations x + xT + xT^2 = 0, T = [[0,-1],[1,-1]]
        let mut rows: Vec<SparseRow<F::E>> = Vec::new();
        let mut done = vec![false; p1.len()];
        for x in 0..p1.len() {
            if done[x] {
                continue;
            }
            let (c, d) = p1.rep(x);
            let (c, d) = (c as i64, d as i64);
            let xt = p1.index_of(d, -c - d).unwrap();
            let xt2 = p1.index_of(-c - d, c).unwrap();
            for y in [x, xt, xt2] {
                done[y] = true;
            }
            let mut acc: HashMap<usize, F::E> = HashMap::new();
            for y in [x, xt, xt2] {
                if let Some((g, neg)) = pres.sym_gen[y] {
                    let v = if neg { f.neg(&f.one()) } else { f.one() };
                    let e = acc.entry(g).or_insert_with(|| f.zero());
                    *e = f.add(e, &v);
                }
            }
            let mut row: SparseRow<F::E> = acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
            row.sort_by_key(|(c, _)| *c);
            if !row.is_empty() {
                rows.push(row);
            }
        }
        let rref = sparse_rref(f, rows, ng);
        let mut is_pivot = vec![false; ng];
        for (c, _) in &rref {
            is_pivot[*c] = true;
        }
        let basis_gen: Vec<usize> = (0..ng).filter(|&g| !is_pivot[g]).collect();
        let mut pos = vec![usize::MAX; ng];
        for (i, &g) in basis_gen.iter().enumerate() {
            pos[g] = i;
        }
        let mut gen_expr: Vec<SparseRow<F::E>> = vec![Vec::new(); ng];
        for &g in &basis_gen {
            gen_expr[g] = vec![(pos[g], f.one())];
        }
        for (pc, row) in &rref {
            let mut e: SparseRow<F::E> = row[1..].iter().map(|(c, v)| (pos[*c], f.neg(v))).collect();
            e.sort_by_key(|(c, _)| *c);
            gen_expr[*pc] = e;
        }

        let mut space = ManinSymbolSpace {
            pres: pres.clone(),
            field,
            gen_expr,
            basis_gen,
            cusp_basis: Vec::new(),
            cusp_coord: Vec::new(),
        };
        space.compute_cuspidal();
        space
    }

    pub fn level(&self) -> u64 {
        self.pres.level()
    }

    /// Dimension of the plus quotient of all modular symbols.
    pub fn dim(&self) -> usize {
        self.basis_gen.len()
    }

    /// Dimension of the cuspidal plus subspace.
    pub fn cuspidal_dim(&self) -> usize {
        self.cusp_basis.len()
    }

    /// Image of a Manin symbol `(c:d)` in quotient coordinates.
    pub fn symbol_vector(&self, c: i64, d: i64) -> SparseRow<F::E> {
        let f = &self.field;
        let Some(x) = self.pres.p1.index_of(c, d) else { return Vec::new() };
        match self.pres.sym_gen[x] {
            None => Vec::new(),
            Some((g, false)) => self.gen_expr[g].clone(),
            Some((g, true)) => self.gen_expr[g].iter().map(|(c, v)| (*c, f.neg(v))).collect(),
        }
    }

    fn compute_cuspidal(&mut self) {
        let f = &self.field;
        let n = self.level() as i64;
        let mut cusps: Vec<(i64, i64)> = Vec::new();
        let mut rows_by_cusp: Vec<SparseRow<F::E>> = Vec::new();
        let mut cols: Vec<SparseRow<F::E>> = Vec::new();
        for &g in &self.basis_gen {
            let (c, d) = self.pres.p1.rep(self.pres.gen_rep[g]);
            let (a, b, c1, d1) = lift_to_sl2(c as i64, d as i64, n);
            let mut col: HashMap<usize, F::E> = HashMap::new();
            for (num, den, s) in [(a, c1, 1i64), (b, d1, -1)] {
                let k = cusp_index(&mut cusps, num, den, n);
                let e = col.entry(k).or_insert_with(|| f.zero());
                *e = f.add(e, &f.embed(s));
            }
            let mut col: SparseRow<F::E> = col.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
            col.sort_by_key(|(c, _)| *c);
            cols.push(col);
        }
        // transpose to rows indexed by cusp
        rows_by_cusp.resize(cusps.len(), Vec::new());
        for (j, col) in cols.iter().enumerate() {
            for (k, v) in col {
                rows_by_cusp[*k].push((j, v.clone()));
            }
        }
        let m = self.dim();
        let rref = sparse_rref(f, rows_by_cusp, m);
        let mut is_pivot = vec![false; m];
        for (c, _) in &rref {
            is_pivot[*c] = true;
        }
        let free: Vec<usize> = (0..m).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v: SparseRow<F::E> = vec![(j, f.one())];
            for (pc, row) in &rref {
                if let Ok(p) = row.binary_search_by_key(&j, |(c, _)| *c) {
                    v.push((*pc, f.neg(&row[p].1)));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            basis.push(v);
        }
        self.cusp_basis = basis;
        self.cusp_coord = free;
    }

    /// `T_l` applied to the quotient basis vector `j`.
    fn hecke_on_basis(&self, j: usize, h: &[[i64; 4]]) -> SparseRow<F::E> {
        let f = &self.field;
        let (c, d) = self.pres.p1.rep(self.pres.gen_rep[self.basis_gen[j]]);
        let (c, d) = (c as i64, d as i64);
        let mut acc: HashMap<usize, F::E> = HashMap::new();
        for m in h {
            let (c1, d1) = (c * m[0] + d * m[2], c * m[1] + d * m[3]);
            for (k, v) in self.symbol_vector(c1, d1) {
                let e = acc.entry(k).or_insert_with(|| f.zero());
                *e = f.add(e, &v);
            }
        }
        let mut row: SparseRow<F::E> = acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
        row.sort_by_key(|(c, _)| *c);
        row
    }

    /// Matrix of `sum_i coeff_i T_{l_i}` on the cuspidal subspace: entry
    /// `[r][s]` is the `r`-th coordinate of the image of basis vector `s`.
    /// For `l | N` the operator computed is `U_l`.
    pub fn hecke_matrix_combo(&self, ops: &[(u64, i64)]) -> Vec<Vec<F::E>> {
        let f = &self.field;
        let g = self.cuspidal_dim();
        let m = self.dim();
        let mut coord_pos = vec![usize::MAX; m];
        for (i, &j) in self.cusp_coord.iter().enumerate() {
            coord_pos[j] = i;
        }
        let mut mat = vec![vec![f.zero(); g]; g];
        let mut cache: HashMap<usize, SparseRow<F::E>> = HashMap::new();
        for &(l, coeff) in ops {
            let h = heilbronn_merel(l);
            let cf = f.embed(coeff);
            cache.clear();
            for (s, v) in self.cusp_basis.iter().enumerate() {
                let mut img: SparseRow<F::E> = Vec::new();
                for (j, vj) in v {
                    let t = cache.entry(*j).or_insert_with(|| self.hecke_on_basis(*j, &h));
                    img = axpy(f, &img, vj, t);
                }
                for (k, val) in img {
                    let r = coord_pos[k];
                    if r != usize::MAX {
                        mat[r][s] = f.add(&mat[r][s], &f.mul(&cf, &val));
                    }
                }
            }
        }
        mat
    }

    pub fn hecke_matrix(&self, l: u64) -> Vec<Vec<F::E>> {
        self.hecke_matrix_combo(&[(l, 1)])
    }

    /// Whether `l` divides the level (the matrix is then `U_l`).
    pub fn is_u_operator(&self, l: u64) -> bool {
        self.level().is_multiple_of(l)
    }
}

/// A matrix in `SL_2(Z)` whose bottom row is congruent to `(c, d)` mod `N`.
fn lift_to_sl2(c: i64, d: i64, n: i64) -> (i64, i64, i64, i64) {
    let d1 = if d == 0 && n > 1 { n } else if n == 1 && c == 0 && d == 0 { 1 } else { d };
    let mut c1 = c;
    while gcd_u64(c1.unsigned_abs(), d1.unsigned_abs()) != 1 {
        c1 += n;
    }
    // a d1 - b c1 = 1
    let (g, x, y) = egcd(d1, c1);
    debug_assert_eq!(g.abs(), 1);
    let (a, b) = (x * g, -y * g);
    debug_assert_eq!(a * d1 - b * c1, 1);
    (a, b, c1, d1)
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// `(p, q)` in lowest terms with `q >= 0`, and `s` with `p s = 1 mod q`.
fn normalize_cusp(p: i64, q: i64) -> (i64, i64, i64) {
    let g = gcd_u64(p.unsigned_abs(), q.unsigned_abs()) as i64;
    let (mut p, mut q) = (p / g, q / g);
    if q < 0 || (q == 0 && p < 0) {
        p = -p;
        q = -q;
    }
    let s = if q == 0 {
        p
    } else {
        let (_, x, _) = egcd(p.rem_euclid(q), q);
        x.rem_euclid(q.max(1))
    };
    (p, q, s)
}

fn cusps_equivalent(a: (i64, i64), b: (i64, i64), n: i64) -> bool {
    let (_, q1, s1) = normalize_cusp(a.0, a.1);
    let (_, q2, s2) = normalize_cusp(b.0, b.1);
    let m = gcd_u64((q1 * q2).unsigned_abs(), n as u64) as i64;
    (s1 * q2 - s2 * q1).rem_euclid(m) == 0
}

/// Index of the class of `p/q` modulo `Gamma_0(N)` and `alpha ~ -alpha`.
fn cusp_index(cusps: &mut Vec<(i64, i64)>, p: i64, q: i64, n: i64) -> usize {
    for (i, &c) in cusps.iter().enumerate() {
        if cusps_equivalent(c, (p, q), n) || cusps_equivalent(c, (-p, q), n) {
            return i;
        }
    }
    cusps.push((p, q));
    cusps.len() - 1
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, RationalField};
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn level_11() {
        let pres = Arc::new(Presentation::new(11));
        let s = ManinSymbolSpace::new(pres, RationalField);
        assert_eq!(s.cuspidal_dim(), 1);
        assert_eq!(s.hecke_matrix(2), vec![vec![rat(-2, 1)]]);
        assert_eq!(s.hecke_matrix(3), vec![vec![rat(-1, 1)]]);
        assert_eq!(s.hecke_matrix(13), vec![vec![rat(4, 1)]]);
    }

    #[test]
    fn level_one_and_tiny() {
        for n in 1..11 {
            let s = ManinSymbolSpace::new(Arc::new(Presentation::new(n)), PrimeField { p: 1_000_003 });
            assert_eq!(s.cuspidal_dim(), 0, "N = {n}");
        }
    }

    #[test]
    fn lifts() {
        for n in [1i64, 2, 6, 12, 35] {
            for c in 0..n {
                for d in 0..n {
                    if gcd_u64(gcd_u64(c as u64, d as u64), n as u64) != 1 {
                        continue;
                    }
                    let (a, b, c1, d1) = lift_to_sl2(c, d, n);
                    assert_eq!(a * d1 - b * c1, 1);
                    assert_eq!((c1 - c).rem_euclid(n), 0);
                    assert_eq!((d1 - d).rem_euclid(n), 0);
                }
            }
        }
    }
}
