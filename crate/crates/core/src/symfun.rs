//! Symmetric-function generators and structure decompositions.
//!
//! Provides the elementary/complete/power-sum generators of the ring R_n of
//! symmetric polynomials in x_1..x_n, Schur functions via the Jacobi-Trudi
//! determinant, the bar specialization (last two variables sent to x, -x),
//! Newton-identity rewrites between generator systems, and the decomposition
//! of R_n as a free module over its odd-power-sum subring with products of
//! even complete functions as basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{rat_int, Expo, LaurentPoly, Rat};
use num::Zero;

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// Integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::OutOfRange(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::OutOfRange("partition parts must be positive".into()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// All partitions of `k` with at most `max_parts` parts, in a fixed order.
    pub fn all(k: u64, max_parts: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fn go(rem: u64, max_part: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            if slots == 0 {
                return;
            }
            let top = rem.min(max_part);
            for p in (1..=top).rev() {
                prefix.push(p);
                go(rem - p, p, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        go(k, k.max(1), max_parts, &mut prefix, &mut out);
        out
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Elementary symmetric polynomial e_k in n variables; zero for k < 0 or k > n.
pub fn elem_sym(k: i64, n: usize) -> LaurentPoly {
    if k < 0 || k as usize > n {
        return LaurentPoly::zero(n);
    }
    let k = k as usize;
    // row j: e_0..e_k over the first j variables
    let mut row: Vec<LaurentPoly> = (0..=k)
        .map(|i| {
            if i == 0 {
                LaurentPoly::one(n)
            } else {
                LaurentPoly::zero(n)
            }
        })
        .collect();
    for j in 0..n {
        let xj = LaurentPoly::var(n, j);
        for i in (1..=k).rev() {
            row[i] = row[i].add(&row[i - 1].mul(&xj));
        }
    }
    row[k].clone()
}

/// Complete homogeneous symmetric polynomial h_k in n variables.
pub fn complete_sym(k: i64, n: usize) -> LaurentPoly {
    if k < 0 {
        return LaurentPoly::zero(n);
    }
    let k = k as usize;
    let mut row: Vec<LaurentPoly> = (0..=k)
        .map(|i| {
            if i == 0 {
                LaurentPoly::one(n)
            } else {
                LaurentPoly::zero(n)
            }
        })
        .collect();
    // h_k over j variables: h_k^{(j)} = h_k^{(j-1)} + x_j h_{k-1}^{(j)}
    for j in 0..n {
        let xj = LaurentPoly::var(n, j);
        for i in 1..=k {
            let t = row[i - 1].mul(&xj);
            row[i] = row[i].add(&t);
        }
    }
    row[k].clone()
}

/// Complete symmetric function of the inverted variables, h_k(x^{-1}).
pub fn complete_sym_inv(k: i64, n: usize) -> LaurentPoly {
    complete_sym(k, n).invert_vars(0..n)
}

/// Power sum p_k = sum_j x_j^k, Laurent for k < 0. k = 0 is rejected.
pub fn power_sum(k: i64, n: usize) -> Result<LaurentPoly> {
    if k == 0 {
        return Err(Error::OutOfRange("power sum index must be nonzero".into()));
    }
    let mut out = LaurentPoly::zero(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = k;
        out = out.add(&LaurentPoly::monomial(n, e, rat_int(1)));
    }
    Ok(out)
}

/// Schur polynomial s_lambda(x_1..x_n) via the Jacobi-Trudi determinant
/// det(h_{lambda_i - i + j}). Vanishes when the partition is longer than n.
pub fn schur(lambda: &Partition, n: usize) -> LaurentPoly {
    let l = lambda.len();
    if l == 0 {
        return LaurentPoly::one(n);
    }
    let m: Vec<Vec<LaurentPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| complete_sym(lambda.parts()[i] as i64 - i as i64 + j as i64, n))
                .collect()
        })
        .collect();
    poly_det(&m, n)
}

fn poly_det(m: &[Vec<LaurentPoly>], n: usize) -> LaurentPoly {
    let k = m.len();
    if k == 0 {
        return LaurentPoly::one(n);
    }
    if k == 1 {
        return m[0][0].clone();
    }
    let mut out = LaurentPoly::zero(n);
    for j in 0..k {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = (1..k)
            .map(|i| {
                (0..k)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&poly_det(&minor, n));
        out = if j % 2 == 0 {
            out.add(&term)
        } else {
            out.sub(&term)
        };
    }
    out
}

/// Monomial symmetric polynomial m_lambda in n variables.
pub fn monomial_sym(lambda: &Partition, n: usize) -> LaurentPoly {
    if lambda.len() > n {
        return LaurentPoly::zero(n);
    }
    let mut padded: Vec<i64> = lambda.parts().iter().map(|&p| p as i64).collect();
    padded.resize(n, 0);
    let mut out = LaurentPoly::zero(n);
    let mut seen = std::collections::BTreeSet::new();
    for (perm, _) in crate::poly::permutations_with_sign(n) {
        let e: Vec<i64> = (0..n).map(|i| padded[perm[i]]).collect();
        if seen.insert(e.clone()) {
            out.add_term(Expo(e), rat_int(1));
        }
    }
    out
}

/// Specialize the last two of n variables to (x, -x); the result lives in
/// n-1 variables with x in the last slot.
pub fn bar(f: &LaurentPoly) -> Result<LaurentPoly> {
    f.specialize_last_pair()
}

/// Invariance under all adjacent transpositions.
pub fn is_symmetric(f: &LaurentPoly) -> bool {
    let n = f.num_vars();
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        if &f.permute_vars(&perm) != f {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Generator rewrites (Newton identities)
// ---------------------------------------------------------------------------

/// A polynomial in abstract generators g_1..g_m: variable i stands for the
/// generator of index i+1. Which family (e, p or h) the variables denote is
/// up to the caller.
pub type GenExpr = LaurentPoly;

/// Direction for [`newton_convert`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NewtonDirection {
    ElemToPower,
    PowerToElem,
}

/// e_0..e_kmax as polynomials in p_1..p_kmax (kmax variables), from
/// k e_k = sum_{r=1}^{k} (-1)^{r-1} p_r e_{k-r}.
pub fn elem_in_power_table(kmax: usize) -> Vec<GenExpr> {
    let vars = kmax;
    let mut e: Vec<GenExpr> = vec![LaurentPoly::one(vars)];
    for k in 1..=kmax {
        let mut acc = LaurentPoly::zero(vars);
        for r in 1..=k {
            let t = LaurentPoly::var(vars, r - 1).mul(&e[k - r]);
            acc = if r % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        e.push(acc.scale(&Rat::new(1.into(), (k as i64).into())));
    }
    e
}

/// p_1..p_kmax as polynomials in e_1..e_vmax. When `n_vars` is given, e_k = 0
/// for k > n_vars (the rewrite valid in R_{n_vars}); otherwise generic.
pub fn power_in_elem_table(kmax: usize, n_vars: Option<usize>) -> Vec<GenExpr> {
    let vars = n_vars.unwrap_or(kmax).max(1);
    let evar = |k: usize| -> GenExpr {
        if k == 0 {
            LaurentPoly::one(vars)
        } else if k <= vars && n_vars.map_or(k <= kmax.max(vars), |n| k <= n) {
            if k <= vars {
                LaurentPoly::var(vars, k - 1)
            } else {
                LaurentPoly::zero(vars)
            }
        } else {
            LaurentPoly::zero(vars)
        }
    };
    let mut p: Vec<GenExpr> = Vec::new();
    for k in 1..=kmax {
        // p_k = (-1)^{k-1} (k e_k - sum_{r=1}^{k-1} (-1)^{r-1} p_r e_{k-r})
        let mut acc = evar(k).scale(&rat_int(k as i64));
        for r in 1..k {
            let t = p[r - 1].mul(&evar(k - r));
            acc = if r % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
        }
        if k % 2 == 0 {
            acc = acc.neg();
        }
        p.push(acc);
    }
    p
}

/// h_0..h_kmax as polynomials in e_1..e_vmax, from
/// sum_{i=0}^{m} (-1)^i e_i h_{m-i} = 0. Same truncation convention as above.
pub fn complete_in_elem_table(kmax: usize, n_vars: Option<usize>) -> Vec<GenExpr> {
    let vars = n_vars.unwrap_or(kmax).max(1);
    let evar = |k: usize| -> GenExpr {
        if k == 0 {
            LaurentPoly::one(vars)
        } else if k <= vars {
            LaurentPoly::var(vars, k - 1)
        } else {
            LaurentPoly::zero(vars)
        }
    };
    let mut h: Vec<GenExpr> = vec![LaurentPoly::one(vars)];
    for m in 1..=kmax {
        let mut acc = LaurentPoly::zero(vars);
        for i in 1..=m {
            let t = evar(i).mul(&h[m - i]);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        h.push(acc);
    }
    h
}

/// Evaluate a generator expression at concrete polynomial images of its
/// generators.
pub fn substitute_generators(expr: &GenExpr, images: &[LaurentPoly]) -> LaurentPoly {
    assert!(images.len() >= expr.num_vars());
    let vars = images
        .first()
        .map(|p| p.num_vars())
        .unwrap_or(0);
    let mut out = LaurentPoly::zero(vars);
    for (e, c) in expr.terms() {
        let mut term = LaurentPoly::constant(vars, c.clone());
        for (i, &k) in e.0.iter().enumerate() {
            assert!(k >= 0, "generator exponents must be nonnegative");
            for _ in 0..k {
                term = term.mul(&images[i]);
            }
        }
        out = out.add(&term);
    }
    out
}

/// Rewrite a generator expression between the e- and p-systems using the
/// Newton identities (untruncated, so the round trip is the identity).
pub fn newton_convert(expr: &GenExpr, direction: NewtonDirection) -> GenExpr {
    let m = expr.num_vars();
    let images: Vec<GenExpr> = match direction {
        NewtonDirection::ElemToPower => {
            let tab = elem_in_power_table(m);
            (1..=m).map(|k| tab[k].clone()).collect()
        }
        NewtonDirection::PowerToElem => power_in_elem_table(m, None)
            .into_iter()
            .map(|p| pad_vars(&p, m))
            .collect(),
    };
    substitute_generators(expr, &images)
}

fn pad_vars(p: &LaurentPoly, vars: usize) -> LaurentPoly {
    if p.num_vars() == vars {
        p.clone()
    } else {
        p.embed(vars, 0)
    }
}

/// Express a symmetric polynomial (nonnegative exponents) in the elementary
/// generators e_1..e_n by leading-term reduction.
pub fn express_in_elem(f: &LaurentPoly, n: usize) -> Result<GenExpr> {
    if f.num_vars() != n {
        return Err(Error::VarMismatch(f.num_vars(), n));
    }
    if f.terms().any(|(e, _)| e.0.iter().any(|&k| k < 0)) {
        return Err(Error::OutOfRange(
            "only polynomial (nonnegative) exponents supported".into(),
        ));
    }
    if !is_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    let e_table: Vec<LaurentPoly> = (0..=n).map(|k| elem_sym(k as i64, n)).collect();
    let mut rem = f.clone();
    let mut out = LaurentPoly::zero(n);
    while let Some((lead, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let lam = lead.0.clone();
        if lam.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Internal(
                "leading monomial of a symmetric polynomial not dominant".into(),
            ));
        }
        // multiplicities a_i = lambda_i - lambda_{i+1}
        let mut gexp = vec![0i64; n];
        let mut prod = LaurentPoly::one(n);
        for i in 0..n {
            let next = if i + 1 < n { lam[i + 1] } else { 0 };
            let a = lam[i] - next;
            gexp[i] = a;
            for _ in 0..a {
                prod = prod.mul(&e_table[i + 1]);
            }
        }
        out.add_term(Expo(gexp), c.clone());
        rem = rem.sub(&prod.scale(&c));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Free-module decomposition over the odd power sums
// ---------------------------------------------------------------------------

/// Decomposition of a symmetric polynomial over the odd-power-sum subring:
/// f = sum over weakly increasing (r_1..r_{n'}) of
/// g(p_1, p_3, ...) * h_{2 r_1} ... h_{2 r_{n'}}.
///
/// Coefficient polynomials use one variable per available odd power sum:
/// variable j stands for p_{2j+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct OddDecomposition {
    pub num_vars: usize,
    /// odd power-sum indices available in R_n (1, 3, ..., 2*ceil(n/2)-1)
    pub odd_indices: Vec<i64>,
    pub summands: Vec<(Vec<u64>, GenExpr)>,
}

impl OddDecomposition {
    pub fn reassemble(&self) -> LaurentPoly {
        let n = self.num_vars;
        let p_images: Vec<LaurentPoly> = self
            .odd_indices
            .iter()
            .map(|&k| power_sum(k, n).expect("odd index nonzero"))
            .collect();
        let mut out = LaurentPoly::zero(n);
        for (rs, g) in &self.summands {
            let mut basis = LaurentPoly::one(n);
            for &r in rs {
                if r > 0 {
                    basis = basis.mul(&complete_sym(2 * r as i64, n));
                }
            }
            out = out.add(&substitute_generators(g, &p_images).mul(&basis));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let summands: Vec<serde_json::Value> = self
            .summands
            .iter()
            .map(|(rs, g)| {
                serde_json::json!({
                    "h_indices": rs.iter().map(|&r| 2 * r).collect::<Vec<u64>>(),
                    "coeff_poly": g.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "vars": self.num_vars,
            "odd_power_sums": self.odd_indices,
            "summands": summands,
        })
    }
}

fn odd_indices_for(n: usize) -> Vec<i64> {
    let top = 2 * n.div_ceil(2) as i64 - 1;
    (0..).map(|j| 2 * j + 1).take_while(|&k| k <= top).collect()
}

/// Multisets (weakly increasing vectors) of values from `vals` with the given
/// length whose weighted sum equals `target`.
fn multisets_summing(vals: &[i64], len: usize, target: i64, min_idx: usize) -> Vec<Vec<i64>> {
    if len == 0 {
        return if target == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for (i, &v) in vals.iter().enumerate().skip(min_idx) {
        if v > target {
            break;
        }
        for mut rest in multisets_summing(vals, len - 1, target - v, i) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// Multisets of any length (including empty) from `vals` summing to `target`.
fn multisets_any_len(vals: &[i64], target: i64) -> Vec<Vec<i64>> {
    fn go(vals: &[i64], target: i64, min_idx: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if target == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in vals.iter().enumerate().skip(min_idx) {
            if v > target {
                break;
            }
            cur.push(v);
            go(vals, target - v, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    go(vals, target, 0, &mut cur, &mut out);
    out
}

/// Decompose a symmetric polynomial with nonnegative exponents over the odd
/// power sums with products of even complete functions as module basis.
/// Solves an exact linear system per total degree; the graded systems have a
/// unique solution, and failure is reported as an internal error.
pub fn odd_decompose(f: &LaurentPoly, n: usize) -> Result<OddDecomposition> {
    if f.num_vars() != n {
        return Err(Error::VarMismatch(f.num_vars(), n));
    }
    if f.terms().any(|(e, _)| e.0.iter().any(|&k| k < 0)) {
        return Err(Error::OutOfRange(
            "only polynomial (nonnegative) exponents supported".into(),
        ));
    }
    if !is_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    let nprime = n / 2;
    let odd = odd_indices_for(n);
    let mut acc: BTreeMap<Vec<u64>, GenExpr> = BTreeMap::new();

    let degrees: std::collections::BTreeSet<i64> = f.terms().map(|(e, _)| e.total()).collect();
    for d in degrees {
        let f_d = f.weighted_part(&vec![1; n], d);
        // enumerate candidate basis elements in lexicographic (r, nu) order
        let mut cands: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let max_r = (d / 2) as i64;
        let r_lists = {
            let vals: Vec<i64> = (0..=max_r).collect();
            // weakly increasing r-vectors of length n' with 2*sum <= d
            let mut lists = Vec::new();
            for s in 0..=(d / 2) {
                lists.extend(multisets_summing(&vals, nprime, s, 0));
            }
            lists.sort();
            lists
        };
        for rs in r_lists {
            let hdeg: i64 = 2 * rs.iter().sum::<i64>();
            for nu in multisets_any_len(&odd, d - hdeg) {
                cands.push((rs.clone(), nu));
            }
        }
        if cands.is_empty() {
            if f_d.is_zero() {
                continue;
            }
            return Err(Error::Internal(format!(
                "no basis candidates at degree {}",
                d
            )));
        }
        // coordinates: all degree-d monomials appearing
        let mut coords: BTreeMap<Expo, usize> = BTreeMap::new();
        let mut columns_polys: Vec<LaurentPoly> = Vec::new();
        for (rs, nu) in &cands {
            let mut p = LaurentPoly::one(n);
            for &r in rs {
                if r > 0 {
                    p = p.mul(&complete_sym(2 * r, n));
                }
            }
            for &k in nu {
                p = p.mul(&power_sum(k, n)?);
            }
            for (e, _) in p.terms() {
                let next = coords.len();
                coords.entry(e.clone()).or_insert(next);
            }
            columns_polys.push(p);
        }
        for (e, _) in f_d.terms() {
            let next = coords.len();
            coords.entry(e.clone()).or_insert(next);
        }
        let nrows = coords.len();
        let columns: Vec<Vec<Rat>> = columns_polys
            .iter()
            .map(|p| {
                let mut col = vec![Rat::zero(); nrows];
                for (e, c) in p.terms() {
                    col[coords[e]] = c.clone();
                }
                col
            })
            .collect();
        let mut target = vec![Rat::zero(); nrows];
        for (e, c) in f_d.terms() {
            target[coords[e]] = c.clone();
        }
        let sol = linalg::solve_unique(&columns, &target)?;
        for ((rs, nu), c) in cands.iter().zip(sol) {
            if c.is_zero() {
                continue;
            }
            let key: Vec<u64> = rs.iter().map(|&r| r as u64).collect();
            let mut gexp = vec![0i64; odd.len()];
            for &k in nu {
                let j = odd.iter().position(|&o| o == k).unwrap();
                gexp[j] += 1;
            }
            let entry = acc
                .entry(key)
                .or_insert_with(|| LaurentPoly::zero(odd.len()));
            entry.add_term(Expo(gexp), c);
        }
    }
    Ok(OddDecomposition {
        num_vars: n,
        odd_indices: odd,
        summands: acc.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    /// Oracle: e_k by explicit enumeration of k-subsets.
    fn elem_oracle(k: usize, n: usize) -> LaurentPoly {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if k == 0 {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    go(i + 1, n, k - 1, cur, out);
                    cur.pop();
                }
            }
            let mut cur = Vec::new();
            go(0, n, k, &mut cur, &mut out);
            out
        }
        let mut out = LaurentPoly::zero(n);
        for s in subsets(n, k) {
            let mut e = vec![0i64; n];
            for i in s {
                e[i] = 1;
            }
            out.add_term(Expo(e), rat_int(1));
        }
        out
    }

    /// Oracle: h_k by explicit enumeration of degree-k multisets.
    fn complete_oracle(k: i64, n: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero(n);
        fn go(slot: usize, rem: i64, n: usize, cur: &mut Vec<i64>, out: &mut LaurentPoly) {
            if slot == n {
                if rem == 0 {
                    out.add_term(Expo(cur.clone()), rat_int(1));
                }
                return;
            }
            for v in 0..=rem {
                cur.push(v);
                go(slot + 1, rem - v, n, cur, out);
                cur.pop();
            }
        }
        let mut cur = Vec::new();
        go(0, k, n, &mut cur, &mut out);
        out
    }

    /// Oracle: Schur polynomial by summing over semistandard tableaux.
    fn schur_oracle(lambda: &Partition, n: usize) -> LaurentPoly {
        if lambda.len() > n {
            return LaurentPoly::zero(n);
        }
        let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
        let mut out = LaurentPoly::zero(n);
        let mut rows: Vec<Vec<usize>> = shape.iter().map(|&r| vec![0; r]).collect();
        fn fill(
            r: usize,
            c: usize,
            shape: &[usize],
            rows: &mut Vec<Vec<usize>>,
            n: usize,
            out: &mut LaurentPoly,
        ) {
            if r == shape.len() {
                let mut e = vec![0i64; n];
                for row in rows.iter() {
                    for &v in row {
                        e[v] += 1;
                    }
                }
                out.add_term(Expo(e), rat_int(1));
                return;
            }
            let (nr, nc) = if c + 1 < shape[r] {
                (r, c + 1)
            } else {
                (r + 1, 0)
            };
            let lo = {
                let mut lo = 0;
                if c > 0 {
                    lo = lo.max(rows[r][c - 1]); // weakly increasing rows
                }
                if r > 0 && c < shape[r - 1] {
                    lo = lo.max(rows[r - 1][c] + 1); // strictly increasing columns
                }
                lo
            };
            for v in lo..n {
                rows[r][c] = v;
                fill(nr, nc, shape, rows, n, out);
            }
        }
        if shape.is_empty() {
            return LaurentPoly::one(n);
        }
        fill(0, 0, &shape, &mut rows, n, &mut out);
        out
    }

    #[test]
    fn elem_examples() {
        assert_eq!(elem_sym(0, 3), LaurentPoly::one(3));
        assert_eq!(elem_sym(1, 2), power_sum(1, 2).unwrap());
        assert_eq!(elem_sym(5, 4), LaurentPoly::zero(4));
        for n in 0..=5 {
            for k in 0..=n {
                assert_eq!(elem_sym(k as i64, n), elem_oracle(k, n), "e_{k}^{n}");
            }
        }
    }

    #[test]
    fn elem_bar_specialization() {
        // bar e_2^{(4)} = e_2^{(2)} - x^2 in variables (x1, x2, x)
        let b = bar(&elem_sym(2, 4)).unwrap();
        let expect = elem_sym(2, 2)
            .embed(3, 0)
            .sub(&LaurentPoly::monomial(3, vec![0, 0, 2], rat_int(1)));
        assert_eq!(b, expect);
    }

    #[test]
    fn complete_examples() {
        assert_eq!(complete_sym(0, 2), LaurentPoly::one(2));
        assert_eq!(complete_sym(1, 2), power_sum(1, 2).unwrap());
        let h22 = complete_sym(2, 2);
        let mut expect = LaurentPoly::zero(2);
        expect.add_term(Expo(vec![2, 0]), rat_int(1));
        expect.add_term(Expo(vec![1, 1]), rat_int(1));
        expect.add_term(Expo(vec![0, 2]), rat_int(1));
        assert_eq!(h22, expect);
        for n in 1..=4 {
            for k in 0..=5 {
                assert_eq!(complete_sym(k, n), complete_oracle(k, n));
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        assert!(power_sum(0, 2).is_err());
        let pm1 = power_sum(-1, 2).unwrap();
        assert_eq!(pm1.coeff(&[-1, 0]), rat_int(1));
        assert_eq!(pm1.coeff(&[0, -1]), rat_int(1));
        assert_eq!(power_sum(3, 1).unwrap().coeff(&[3]), rat_int(1));
    }

    #[test]
    fn schur_examples() {
        // s_(1,1) = e_2
        let l11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(schur(&l11, 2), elem_sym(2, 2));
        // s_(3) = h_3
        let l3 = Partition::new(vec![3]).unwrap();
        assert_eq!(schur(&l3, 2), complete_sym(3, 2));
        // s_(2,1) in 3 variables: h2 h1 - h3, cross-checked against tableaux
        let l21 = Partition::new(vec![2, 1]).unwrap();
        let jt = complete_sym(2, 3)
            .mul(&complete_sym(1, 3))
            .sub(&complete_sym(3, 3));
        assert_eq!(schur(&l21, 3), jt);
        assert_eq!(schur(&l21, 3), schur_oracle(&l21, 3));
        // vanishing beyond the variable count
        let l111 = Partition::new(vec![1, 1, 1]).unwrap();
        assert!(schur(&l111, 2).is_zero());
        // broader oracle sweep
        for k in 1..=4u64 {
            for lam in Partition::all(k, 4) {
                assert_eq!(schur(&lam, 3), schur_oracle(&lam, 3), "{:?}", lam);
            }
        }
    }

    #[test]
    fn pieri_rule() {
        // s_lambda * s_(1) = sum over lambda + one box, for |lambda| <= 4, n = 4
        let n = 4;
        let s1 = schur(&Partition::new(vec![1]).unwrap(), n);
        for k in 0..=4u64 {
            for lam in Partition::all(k, n) {
                let lhs = schur(&lam, n).mul(&s1);
                let mut rhs = LaurentPoly::zero(n);
                let mut parts = lam.parts().to_vec();
                parts.push(0);
                let mut seen = std::collections::BTreeSet::new();
                for i in 0..parts.len() {
                    let mut mu = parts.clone();
                    mu[i] += 1;
                    let mu: Vec<u64> = mu.into_iter().filter(|&p| p > 0).collect();
                    if mu.windows(2).any(|w| w[0] < w[1]) || !seen.insert(mu.clone()) {
                        continue;
                    }
                    rhs = rhs.add(&schur(&Partition::new(mu).unwrap(), n));
                }
                assert_eq!(lhs, rhs, "Pieri fails for {:?}", lam);
            }
        }
    }

    #[test]
    fn bar_power_sums() {
        // bar p_3^{(4)} = p_3^{(2)} embedded in (x1, x2, x)
        let b = bar(&power_sum(3, 4).unwrap()).unwrap();
        assert_eq!(b, power_sum(3, 2).unwrap().embed(3, 0));
        // untouched variable
        let b = bar(&LaurentPoly::var(4, 0)).unwrap();
        assert_eq!(b, LaurentPoly::var(3, 0));
        assert!(bar(&LaurentPoly::one(1)).is_err());
    }

    #[test]
    fn newton_identity_concrete() {
        // k e_k = sum_{r=1}^k (-1)^{r-1} p_r e_{k-r} for 1 <= k <= n <= 6
        for n in 1..=6usize {
            for k in 1..=n as i64 {
                let mut rhs = LaurentPoly::zero(n);
                for r in 1..=k {
                    let t = power_sum(r, n).unwrap().mul(&elem_sym(k - r, n));
                    rhs = if r % 2 == 1 { rhs.add(&t) } else { rhs.sub(&t) };
                }
                assert_eq!(elem_sym(k, n).scale(&rat_int(k)), rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn newton_convert_examples() {
        // e1 -> p1
        let e1 = LaurentPoly::var(1, 0);
        assert_eq!(newton_convert(&e1, NewtonDirection::ElemToPower), e1);
        // e2 -> (p1^2 - p2)/2
        let e2 = LaurentPoly::var(2, 1);
        let img = newton_convert(&e2, NewtonDirection::ElemToPower);
        let expect = LaurentPoly::var(2, 0)
            .pow(2)
            .sub(&LaurentPoly::var(2, 1))
            .scale(&rat(1, 2));
        assert_eq!(img, expect);
        // p2 -> e1^2 - 2 e2
        let p2 = LaurentPoly::var(2, 1);
        let img = newton_convert(&p2, NewtonDirection::PowerToElem);
        let expect = LaurentPoly::var(2, 0)
            .pow(2)
            .sub(&LaurentPoly::var(2, 1).scale(&rat_int(2)));
        assert_eq!(img, expect);
    }

    #[test]
    fn newton_convert_round_trip() {
        // a mixed expression in e1..e3
        let expr = LaurentPoly::var(3, 0)
            .mul(&LaurentPoly::var(3, 2))
            .add(&LaurentPoly::var(3, 1).pow(2).scale(&rat(3, 7)));
        let there = newton_convert(&expr, NewtonDirection::ElemToPower);
        let back = newton_convert(&there, NewtonDirection::PowerToElem);
        assert_eq!(back, expr);
    }

    #[test]
    fn express_in_elem_round_trip() {
        let n = 3;
        // f = e1 e2 + 2 e3 expanded, then re-expressed
        let f = elem_sym(1, n)
            .mul(&elem_sym(2, n))
            .add(&elem_sym(3, n).scale(&rat_int(2)));
        let expr = express_in_elem(&f, n).unwrap();
        let images: Vec<LaurentPoly> = (1..=n).map(|k| elem_sym(k as i64, n)).collect();
        assert_eq!(substitute_generators(&expr, &images), f);
        assert!(express_in_elem(&LaurentPoly::var(2, 0), 2).is_err());
    }

    #[test]
    fn odd_generators_vanish_together() {
        // writing p_{2j+1} in e-generators of R_n, every monomial contains an
        // odd-indexed e; and symmetrically h_{2r-1} reduces to zero once
        // odd e's are deleted
        for n in 1..=4usize {
            let kmax = 7.min(2 * n + 1);
            let ptab = power_in_elem_table(kmax, Some(n));
            for k in (1..=kmax).step_by(2) {
                for (e, _) in ptab[k - 1].terms() {
                    let has_odd = e.0.iter().enumerate().any(|(i, &a)| a > 0 && (i + 1) % 2 == 1);
                    assert!(has_odd, "p_{k} in R_{n} has an even-only monomial");
                }
            }
            let htab = complete_in_elem_table(2 * 4 - 1, Some(n));
            for r in 1..=4usize {
                let h = &htab[2 * r - 1];
                // delete monomials containing odd e's: remainder must vanish
                let mut remainder = LaurentPoly::zero(h.num_vars());
                for (e, c) in h.terms() {
                    let has_odd = e.0.iter().enumerate().any(|(i, &a)| a > 0 && (i + 1) % 2 == 1);
                    if !has_odd {
                        remainder.add_term(e.clone(), c.clone());
                    }
                }
                assert!(remainder.is_zero(), "h_{} with n={}", 2 * r - 1, n);
            }
        }
    }

    #[test]
    fn odd_decompose_examples() {
        // h1 in R_2 = p1 * h_0
        let d = odd_decompose(&complete_sym(1, 2), 2).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].0, vec![0]);
        assert_eq!(d.summands[0].1, LaurentPoly::var(1, 0));
        // e2 in R_2 = p1^2 * h_0 - h_2  (e2 = p1^2 - h2)
        let d = odd_decompose(&elem_sym(2, 2), 2).unwrap();
        let as_map: BTreeMap<Vec<u64>, GenExpr> = d.summands.iter().cloned().collect();
        assert_eq!(as_map[&vec![0]], LaurentPoly::var(1, 0).pow(2));
        assert_eq!(as_map[&vec![1]], LaurentPoly::one(1).neg());
        assert_eq!(d.reassemble(), elem_sym(2, 2));
        // zero decomposes to nothing
        let d = odd_decompose(&LaurentPoly::zero(3), 3).unwrap();
        assert!(d.summands.is_empty());
    }

    #[test]
    fn odd_decompose_rejects_asymmetric() {
        assert!(odd_decompose(&LaurentPoly::var(2, 0), 2).is_err());
    }

    #[test]
    fn monomial_sym_basics() {
        let m11 = monomial_sym(&Partition::new(vec![1, 1]).unwrap(), 3);
        assert_eq!(m11, elem_sym(2, 3));
        let m2 = monomial_sym(&Partition::new(vec![2]).unwrap(), 2);
        assert_eq!(m2, power_sum(2, 2).unwrap());
    }
}
