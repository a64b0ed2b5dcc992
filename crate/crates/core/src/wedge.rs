//! Exterior spaces of antisymmetric polynomials in X_1..X_ell over the ring
//! of symmetric Laurent polynomials, the distinguished generators v, w, xi,
//! the kernel elements Xi_1 and Xi_2, the residue specializations rho_+ and
//! rho_-, the free basis of the residue-free subspaces U_{2n,l}, and graded
//! dimensions of the quotients M_{2n,l}.
//!
//! A [`WedgeElem`] stores only strictly increasing X-exponent tuples; the
//! tuple (i_1 < ... < i_l) with coefficient c stands for
//! c * Asym(X_1^{i_1} ... X_l^{i_l}) where Asym sums over all slot
//! permutations with signs. Flat (non-canonical) polynomials in the X's and
//! x's are plain [`MPoly`] values with the X slots first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{perm_sign, permutations_with_sign, rat, rat_int, Expo, LaurentPoly, MPoly, Rat, Scalar};
use num::Zero;
use crate::symfun::{elem_sym, monomial_sym, Partition};

// ---------------------------------------------------------------------------
// WedgeElem
// ---------------------------------------------------------------------------

/// Antisymmetric polynomial in X_1..X_ell with coefficients in the Laurent
/// polynomials of x_1..x_n, stored on the sorted-tuple basis.
#[derive(Clone, PartialEq, Debug)]
pub struct WedgeElem {
    n_vars: usize,
    ell: usize,
    terms: BTreeMap<Vec<i64>, LaurentPoly>,
}

impl WedgeElem {
    pub fn zero(n_vars: usize, ell: usize) -> Self {
        WedgeElem {
            n_vars,
            ell,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-zero element of the exterior algebra (the empty wedge).
    pub fn scalar(n_vars: usize, c: LaurentPoly) -> Self {
        let mut w = Self::zero(n_vars, 0);
        if !c.is_zero() {
            w.terms.insert(Vec::new(), c);
        }
        w
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, tuple: Vec<i64>, c: LaurentPoly) {
        assert_eq!(tuple.len(), self.ell);
        debug_assert!(tuple.windows(2).all(|w| w[0] < w[1]));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        assert_eq!(self.ell, other.ell);
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        WedgeElem {
            n_vars: self.n_vars,
            ell: self.ell,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n_vars, self.ell);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.mul(f));
        }
        out
    }

    /// Exterior product. Rejects mismatched coefficient rings and results
    /// whose degree exceeds the number of storable X-exponents.
    pub fn wedge_mul(&self, other: &Self) -> Result<Self> {
        if self.n_vars != other.n_vars {
            return Err(Error::VarMismatch(self.n_vars, other.n_vars));
        }
        let ell = self.ell + other.ell;
        if ell > self.n_vars + 1 {
            return Err(Error::DegreeOverflow {
                slot: ell,
                found: ell as i64,
                max: self.n_vars as i64 + 1,
            });
        }
        let mut out = Self::zero(self.n_vars, ell);
        for (t1, c1) in &self.terms {
            'next: for (t2, c2) in &other.terms {
                let mut merged: Vec<(i64, usize)> = t1
                    .iter()
                    .chain(t2.iter())
                    .cloned()
                    .enumerate()
                    .map(|(pos, v)| (v, pos))
                    .collect();
                merged.sort();
                for w in merged.windows(2) {
                    if w[0].0 == w[1].0 {
                        continue 'next;
                    }
                }
                let perm: Vec<usize> = merged.iter().map(|&(_, pos)| pos).collect();
                let sign = perm_sign(&perm);
                let tuple: Vec<i64> = merged.iter().map(|&(v, _)| v).collect();
                let c = c1.mul(c2);
                out.add_term(tuple, if sign > 0 { c } else { c.neg() });
            }
        }
        Ok(out)
    }

    /// Expand to a flat polynomial in ell X-slots followed by the x variables.
    pub fn to_flat(&self) -> MPoly<Rat> {
        let vars = self.ell + self.n_vars;
        let mut out = MPoly::zero(vars);
        let perms = permutations_with_sign(self.ell);
        for (t, c) in &self.terms {
            let cemb = c.embed(vars, self.ell);
            for (perm, sign) in &perms {
                // slot perm[a] receives exponent t[a]
                let mut e = vec![0i64; self.ell];
                for (a, &p) in perm.iter().enumerate() {
                    e[p] = t[a];
                }
                for (ce, cc) in cemb.terms() {
                    let mut full = e.clone();
                    full.extend_from_slice(&ce.0[self.ell..]);
                    let v = if *sign > 0 { cc.clone() } else { cc.neg_ref() };
                    out.add_term(Expo(full), v);
                }
            }
        }
        out
    }

    /// Collect an antisymmetric flat polynomial back onto the sorted-tuple
    /// basis. Fails if the input is not antisymmetric in its X slots.
    pub fn from_antisym_flat(flat: &MPoly<Rat>, ell: usize, n_vars: usize) -> Result<Self> {
        assert_eq!(flat.num_vars(), ell + n_vars);
        let mut out = Self::zero(n_vars, ell);
        for (e, c) in flat.terms() {
            let xpart = &e.0[..ell];
            if xpart.windows(2).all(|w| w[0] < w[1]) {
                let mut coeff = LaurentPoly::zero(n_vars);
                coeff.add_term(Expo(e.0[ell..].to_vec()), c.clone());
                out.add_term(xpart.to_vec(), coeff);
            }
        }
        if &out.to_flat() != flat {
            return Err(Error::Internal(
                "flat polynomial is not antisymmetric in its X slots".into(),
            ));
        }
        Ok(out)
    }

    /// deg with X weighted -1 and x weighted +1, if homogeneous and nonzero.
    pub fn deg1(&self) -> Option<i64> {
        let mut deg = None;
        for (t, c) in &self.terms {
            let xdeg: i64 = t.iter().sum();
            let cdeg = c.homogeneous_degree(&vec![1; self.n_vars])?;
            let d = cdeg - xdeg;
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The minus involution P(X, x) -> P(X^{-1}, x^{-1}).
    pub fn invert(&self) -> Self {
        let mut out = Self::zero(self.n_vars, self.ell);
        // reversing l entries has sign (-1)^{l(l-1)/2}
        let rev_sign = if (self.ell * self.ell.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        };
        for (t, c) in &self.terms {
            let tuple: Vec<i64> = t.iter().rev().map(|&v| -v).collect();
            let ci = c.invert_vars(0..self.n_vars);
            out.add_term(tuple, if rev_sign > 0 { ci } else { ci.neg() });
        }
        out
    }

    /// Reinterpret over a larger x-variable ring (new variables unused, at
    /// the end).
    pub fn embed_x(&self, new_n_vars: usize) -> Self {
        assert!(new_n_vars >= self.n_vars);
        let mut out = Self::zero(new_n_vars, self.ell);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.embed(new_n_vars, 0));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut out = Self::zero(self.n_vars, self.ell);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                serde_json::json!({
                    "X_exps": t,
                    "coeff": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n_vars,
            "ell": self.ell,
            "terms": terms,
        })
    }
}

/// Antisymmetrize a flat polynomial over its X slots and collect the result:
/// asym(P) = sum over slot permutations sigma of sgn(sigma) sigma(P).
/// Rejects X-exponents above n_vars (they would leave the storable range).
pub fn asym(flat: &MPoly<Rat>, ell: usize, n_vars: usize) -> Result<WedgeElem> {
    assert_eq!(flat.num_vars(), ell + n_vars);
    for slot in 0..ell {
        if let Some(d) = flat.max_exponent(slot) {
            if d > n_vars as i64 {
                return Err(Error::DegreeOverflow {
                    slot,
                    found: d,
                    max: n_vars as i64,
                });
            }
        }
    }
    let anti = flat.antisymmetrize(0..ell);
    WedgeElem::from_antisym_flat(&anti, ell, n_vars)
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Which length-one generator to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VwKind {
    V0,
    V,
    W,
}

/// The symmetric polynomial tower P_{r,s} defined by P_{1,s} = e_{2s-1} and
/// P_{r,s} = P_{r-1,s+1} - e_{2s} P_{r-1,1}. Total in r >= 1 and s.
pub(crate) fn p_rs_rec(r: i64, s: i64, two_n: usize) -> LaurentPoly {
    if r == 1 {
        return elem_sym(2 * s - 1, two_n);
    }
    p_rs_rec(r - 1, s + 1, two_n).sub(&elem_sym(2 * s, two_n).mul(&p_rs_rec(r - 1, 1, two_n)))
}

/// P_{r,s} for 1 <= r <= n in 2n variables.
pub fn p_rs(r: i64, s: i64, two_n: usize) -> Result<LaurentPoly> {
    let n = (two_n / 2) as i64;
    if two_n % 2 != 0 || r < 1 || r > n {
        return Err(Error::OutOfRange(format!(
            "p_rs requires even variable count and 1 <= r <= n; got r={r}, two_n={two_n}"
        )));
    }
    Ok(p_rs_rec(r, s, two_n))
}

/// v_0, v_r or w_r at particle count two_n, with any r >= 1 (no upper bound).
pub(crate) fn gen_vw_any(kind: VwKind, r: i64, two_n: usize) -> WedgeElem {
    let n = two_n / 2;
    let mut w = WedgeElem::zero(two_n, 1);
    match kind {
        VwKind::V0 => {
            for j in 0..=n {
                w.add_term(vec![2 * j as i64], elem_sym(2 * j as i64, two_n));
            }
        }
        VwKind::V => {
            for s in 1..=n as i64 {
                w.add_term(vec![2 * (s - 1)], p_rs_rec(r, s, two_n));
            }
        }
        VwKind::W => {
            for s in 1..=n as i64 {
                w.add_term(vec![2 * (s - 1) + 1], p_rs_rec(r, s, two_n));
            }
        }
    }
    w
}

/// The length-one generators: v_0 = sum_j e_{2j} X^{2j},
/// v_r = sum_s P_{r,s} X^{2(s-1)}, w_r = X v_r.
pub fn gen_vw(kind: VwKind, r: i64, two_n: usize) -> Result<WedgeElem> {
    let n = (two_n / 2) as i64;
    if two_n % 2 != 0 {
        return Err(Error::OutOfRange("particle count must be even".into()));
    }
    if kind != VwKind::V0 && (r < 1 || r > n) {
        return Err(Error::OutOfRange(format!(
            "generator index {r} outside 1..={n}"
        )));
    }
    Ok(gen_vw_any(kind, r, two_n))
}

/// Theta_sign(X) = prod_j (1 +- X x_j), flat in one X slot plus n x's.
pub(crate) fn theta(plus: bool, n: usize) -> MPoly<Rat> {
    let vars = 1 + n;
    let mut out = MPoly::one(vars);
    for j in 0..n {
        let mut e = vec![0i64; vars];
        e[0] = 1;
        e[1 + j] = 1;
        let factor = MPoly::one(vars).add(&MPoly::monomial(
            vars,
            e,
            if plus { rat_int(1) } else { rat_int(-1) },
        ));
        out = out.mul(&factor);
    }
    out
}

/// Place a length-one wedge element into slot `slot` of an `ell`-slot flat
/// layout.
pub(crate) fn flat_in_slot(w: &WedgeElem, slot: usize, ell: usize) -> MPoly<Rat> {
    assert_eq!(w.ell(), 1);
    let vars = ell + w.n_vars();
    let mut out = MPoly::zero(vars);
    for (t, c) in w.terms() {
        for (ce, cc) in c.terms() {
            let mut e = vec![0i64; vars];
            e[slot] = t[0];
            e[ell..].copy_from_slice(&ce.0);
            out.add_term(Expo(e), cc.clone());
        }
    }
    out
}

/// The kernel generators: 2 Xi_1 = Theta_+ + (-1)^{n-1} Theta_-, and
/// 2 Xi_2 = (Theta_+Theta_+ - Theta_-Theta_-)(X_1-X_2)/(X_1+X_2)
///        + (-1)^n (Theta_+(X_1)Theta_-(X_2) - Theta_+(X_2)Theta_-(X_1)).
/// The division by (X_1 + X_2) is exact; a remainder is an internal error.
pub fn big_xi(k: usize, n: usize) -> Result<WedgeElem> {
    if k != 1 && k != 2 {
        return Err(Error::OutOfRange("kernel generator index must be 1 or 2".into()));
    }
    if n < k {
        return Err(Error::OutOfRange(format!("need n >= {k}, got {n}")));
    }
    let half = rat(1, 2);
    if k == 1 {
        let tp = theta(true, n);
        let tm = theta(false, n);
        let comb = if n % 2 == 1 {
            tp.add(&tm)
        } else {
            tp.sub(&tm)
        };
        return WedgeElem::from_antisym_flat(&comb.scale(&half), 1, n);
    }
    // two X slots
    let vars = 2 + n;
    let one_slot_p = theta(true, n);
    let one_slot_m = theta(false, n);
    let in_slot = |p: &MPoly<Rat>, slot: usize| -> MPoly<Rat> {
        let mut out = MPoly::zero(vars);
        for (e, c) in p.terms() {
            let mut ne = vec![0i64; vars];
            ne[slot] = e.0[0];
            ne[2..].copy_from_slice(&e.0[1..]);
            out.add_term(Expo(ne), c.clone());
        }
        out
    };
    let tp1 = in_slot(&one_slot_p, 0);
    let tp2 = in_slot(&one_slot_p, 1);
    let tm1 = in_slot(&one_slot_m, 0);
    let tm2 = in_slot(&one_slot_m, 1);
    let a = tp1.mul(&tp2).sub(&tm1.mul(&tm2));
    let x1 = MPoly::var(vars, 0);
    let x2 = MPoly::var(vars, 1);
    let first = a.mul(&x1.sub(&x2)).div_exact_binomial(0, 1)?;
    let b = tp1.mul(&tm2).sub(&tp2.mul(&tm1));
    let comb = if n % 2 == 0 {
        first.add(&b)
    } else {
        first.sub(&b)
    };
    WedgeElem::from_antisym_flat(&comb.scale(&half), 2, n)
}

/// 2 xi_j = (X_1-X_2)/(X_1+X_2) (v_0(X_1) w_j(X_2) + v_0(X_2) w_j(X_1))
///        - v_0(X_1) w_j(X_2) + v_0(X_2) w_j(X_1).
pub fn small_xi(j: i64, two_n: usize) -> Result<WedgeElem> {
    let n = (two_n / 2) as i64;
    if two_n % 2 != 0 || j < 1 || j > n {
        return Err(Error::OutOfRange(format!(
            "xi index {j} outside 1..={n} at particle count {two_n}"
        )));
    }
    small_xi_any(j, two_n)
}

pub(crate) fn small_xi_any(j: i64, two_n: usize) -> Result<WedgeElem> {
    let vars = 2 + two_n;
    let v0 = gen_vw_any(VwKind::V0, 0, two_n);
    let wj = gen_vw_any(VwKind::W, j, two_n);
    let v0x1 = flat_in_slot(&v0, 0, 2);
    let v0x2 = flat_in_slot(&v0, 1, 2);
    let wx1 = flat_in_slot(&wj, 0, 2);
    let wx2 = flat_in_slot(&wj, 1, 2);
    let sym = v0x1.mul(&wx2).add(&v0x2.mul(&wx1));
    let x1 = MPoly::var(vars, 0);
    let x2 = MPoly::var(vars, 1);
    let first = sym.mul(&x1.sub(&x2)).div_exact_binomial(0, 1)?;
    let rest = v0x2.mul(&wx1).sub(&v0x1.mul(&wx2));
    let comb = first.add(&rest).scale(&rat(1, 2));
    WedgeElem::from_antisym_flat(&comb, 2, two_n)
}

// ---------------------------------------------------------------------------
// Residue specializations
// ---------------------------------------------------------------------------

/// rho on a flat polynomial in `ell` X slots and `n_vars` x variables:
/// substitute X_ell = +-x^{-1} and (x_{n-1}, x_n) = (x, -x). The result has
/// ell-1 X slots and n_vars-1 x variables with x last.
pub fn rho_flat(plus: bool, flat: &MPoly<Rat>, ell: usize, n_vars: usize) -> Result<MPoly<Rat>> {
    if ell < 1 {
        return Err(Error::OutOfRange("rho needs at least one X slot".into()));
    }
    if n_vars < 2 {
        return Err(Error::OutOfRange("rho needs at least two x variables".into()));
    }
    assert_eq!(flat.num_vars(), ell + n_vars);
    let collapsed = flat.specialize_last_pair()?; // vars: ell + n_vars - 1
    let x_slot = ell + n_vars - 2; // the surviving x
    let mut unit = vec![0i64; ell + n_vars - 1];
    unit[x_slot] = -1;
    let substituted = collapsed.substitute_var(ell - 1, !plus, &unit);
    Ok(substituted.drop_var(ell - 1))
}

/// rho applied to the fully antisymmetrized representative of a wedge
/// element.
pub fn rho(plus: bool, w: &WedgeElem) -> Result<MPoly<Rat>> {
    rho_flat(plus, &w.to_flat(), w.ell(), w.n_vars())
}

// ---------------------------------------------------------------------------
// The free basis of U_{2n, ell}
// ---------------------------------------------------------------------------

/// Index triple (I, J, K) of a basis element v_I ^ w_J ^ xi_K.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisIndex {
    pub i: Vec<i64>,
    pub j: Vec<i64>,
    pub k: Vec<i64>,
}

impl BasisIndex {
    /// Exterior degree l_1 + l_2 + 2 l_3.
    pub fn ell(&self) -> usize {
        self.i.len() + self.j.len() + 2 * self.k.len()
    }

    /// Check the index constraints at particle count 2n:
    /// I strictly increasing in 1..=n, J strictly increasing in
    /// 1..=n-l1-l3, K weakly increasing in 1..=n-l1-l3+1.
    pub fn is_valid(&self, two_n: usize) -> bool {
        let n = (two_n / 2) as i64;
        let l1 = self.i.len() as i64;
        let l3 = self.k.len() as i64;
        let strictly_inc = |v: &[i64]| v.windows(2).all(|w| w[0] < w[1]);
        let weakly_inc = |v: &[i64]| v.windows(2).all(|w| w[0] <= w[1]);
        strictly_inc(&self.i)
            && strictly_inc(&self.j)
            && weakly_inc(&self.k)
            && self.i.iter().all(|&x| 1 <= x && x <= n)
            && self.j.iter().all(|&x| 1 <= x && x <= n - l1 - l3)
            && self.k.iter().all(|&x| 1 <= x && x <= n - l1 - l3 + 1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "I": self.i, "J": self.j, "K": self.k })
    }
}

/// Build v_I ^ w_J ^ xi_K at particle count two_n.
pub fn basis_element(idx: &BasisIndex, two_n: usize) -> Result<WedgeElem> {
    if !idx.is_valid(two_n) {
        return Err(Error::OutOfRange(format!(
            "index triple {:?} invalid at particle count {}",
            idx, two_n
        )));
    }
    let mut acc = WedgeElem::scalar(two_n, LaurentPoly::one(two_n));
    for &i in &idx.i {
        acc = acc.wedge_mul(&gen_vw(VwKind::V, i, two_n)?)?;
    }
    for &j in &idx.j {
        acc = acc.wedge_mul(&gen_vw(VwKind::W, j, two_n)?)?;
    }
    for &k in &idx.k {
        acc = acc.wedge_mul(&small_xi(k, two_n)?)?;
    }
    Ok(acc)
}

/// Enumerate the free-module basis of U_{2n, ell}: all v_I ^ w_J ^ xi_K with
/// l1 + l2 + 2 l3 = ell and the index constraints of [`BasisIndex::is_valid`].
pub fn u_basis(two_n: usize, ell: usize) -> Result<Vec<(BasisIndex, WedgeElem)>> {
    if two_n % 2 != 0 {
        return Err(Error::OutOfRange("particle count must be even".into()));
    }
    let n = (two_n / 2) as i64;
    let mut out = Vec::new();
    for l1 in (0..=ell.min(n.max(0) as usize)).rev() {
        for l3 in 0..=(ell - l1) / 2 {
            let l2 = ell - l1 - 2 * l3;
            let jmax = n - l1 as i64 - l3 as i64;
            if (l2 as i64) > jmax.max(0) {
                continue;
            }
            for i in combinations(1, n, l1) {
                for j in combinations(1, jmax, l2) {
                    for k in multisets(1, jmax + 1, l3) {
                        let idx = BasisIndex {
                            i: i.clone(),
                            j: j.clone(),
                            k: k.clone(),
                        };
                        if !idx.is_valid(two_n) {
                            continue;
                        }
                        let elem = basis_element(&idx, two_n)?;
                        out.push((idx, elem));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn combinations(lo: i64, hi: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(start: i64, hi: i64, len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=hi - len as i64 + 1 {
            cur.push(v);
            go(v + 1, hi, len - 1, cur, out);
            cur.pop();
        }
    }
    if (hi - lo + 1) < len as i64 {
        return out;
    }
    let mut cur = Vec::new();
    go(lo, hi, len, &mut cur, &mut out);
    out
}

fn multisets(lo: i64, hi: i64, len: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(start: i64, hi: i64, len: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..=hi {
            cur.push(v);
            go(v, hi, len - 1, cur, out);
            cur.pop();
        }
    }
    if hi < lo && len > 0 {
        return out;
    }
    let mut cur = Vec::new();
    go(lo, hi, len, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Graded dimensions of the quotients
// ---------------------------------------------------------------------------

/// Graded dimensions keyed by degree; zero entries are omitted.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct GradedDims {
    pub dims: BTreeMap<i64, u64>,
}

impl GradedDims {
    pub fn shifted(&self, offset: i64) -> Self {
        GradedDims {
            dims: self.dims.iter().map(|(&d, &v)| (d + offset, v)).collect(),
        }
    }

    pub fn dim(&self, d: i64) -> u64 {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .dims
            .iter()
            .map(|(d, v)| serde_json::json!({ "deg": d, "dim": v }))
            .collect();
        serde_json::json!(entries)
    }
}

/// Coordinate vectors of a set of wedge elements on the union of their
/// (X-tuple, x-monomial) supports, in a deterministic order.
fn coordinates(elems: &[WedgeElem]) -> Vec<Vec<Rat>> {
    let mut index: BTreeMap<(Vec<i64>, Expo), usize> = BTreeMap::new();
    for w in elems {
        for (t, c) in w.terms() {
            for (e, _) in c.terms() {
                let next = index.len();
                index.entry((t.clone(), e.clone())).or_insert(next);
            }
        }
    }
    let nrows = index.len();
    elems
        .iter()
        .map(|w| {
            let mut col = vec![Rat::zero(); nrows];
            for (t, c) in w.terms() {
                for (e, v) in c.terms() {
                    col[index[&(t.clone(), e.clone())]] = v.clone();
                }
            }
            col
        })
        .collect()
}

/// All products m_lambda * b with |lambda| chosen so the result sits in
/// deg1 degree d.
fn graded_span(basis: &[WedgeElem], two_n: usize, d: i64) -> Vec<WedgeElem> {
    let mut out = Vec::new();
    for b in basis {
        if b.is_zero() {
            continue;
        }
        let db = b.deg1().expect("basis elements are deg1-homogeneous");
        let fdeg = d - db;
        if fdeg < 0 {
            continue;
        }
        for lam in Partition::all(fdeg as u64, two_n) {
            out.push(b.scale(&monomial_sym(&lam, two_n)));
        }
    }
    out
}

/// Rank of the degree-d slice spanned by {m_lambda * b}.
fn slice_rank(basis: &[WedgeElem], two_n: usize, d: i64) -> usize {
    let span = graded_span(basis, two_n, d);
    if span.is_empty() {
        return 0;
    }
    linalg::rank(&coordinates(&span))
}

/// Check that the degree-d coefficient matrices of {m_lambda * b} have full
/// column rank for all d <= max_deg (the free-module property on a slice).
pub fn basis_independence(two_n: usize, ell: usize, max_deg: i64) -> Result<bool> {
    let basis: Vec<WedgeElem> = u_basis(two_n, ell)?.into_iter().map(|(_, w)| w).collect();
    for d in 0..=max_deg {
        let span = graded_span(&basis, two_n, d);
        if span.is_empty() {
            continue;
        }
        let cols = coordinates(&span);
        if linalg::rank(&cols) != span.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graded dimensions (deg1 grading) of M_{2n,ell} =
/// U_{2n,ell} / (Xi_1 ^ U_{2n,ell-1} + Xi_2 ^ U_{2n,ell-2}), computed per
/// degree by exact rank arithmetic. U_{2n,0} is the full ring of symmetric
/// polynomials.
pub fn quotient_dims(two_n: usize, ell: usize, max_deg: i64) -> Result<GradedDims> {
    if two_n % 2 != 0 {
        return Err(Error::OutOfRange("particle count must be even".into()));
    }
    let mut dims = GradedDims::default();
    if ell > two_n {
        return Ok(dims); // zero module
    }
    if two_n == 0 {
        if ell == 0 {
            dims.dims.insert(0, 1);
        }
        return Ok(dims);
    }
    let scalar_basis = vec![WedgeElem::scalar(two_n, LaurentPoly::one(two_n))];
    let basis_at = |l: usize| -> Result<Vec<WedgeElem>> {
        if l == 0 {
            Ok(scalar_basis.clone())
        } else {
            Ok(u_basis(two_n, l)?.into_iter().map(|(_, w)| w).collect())
        }
    };
    let basis = basis_at(ell)?;
    // relation generators: Xi_1 ^ U_{ell-1} and Xi_2 ^ U_{ell-2}
    let mut rel_gens: Vec<WedgeElem> = Vec::new();
    if ell >= 1 {
        let xi1 = big_xi(1, two_n)?;
        for b in basis_at(ell - 1)? {
            rel_gens.push(xi1.wedge_mul(&b)?);
        }
    }
    if ell >= 2 {
        let xi2 = big_xi(2, two_n)?;
        for b in basis_at(ell - 2)? {
            rel_gens.push(xi2.wedge_mul(&b)?);
        }
    }
    for d in 0..=max_deg {
        let ru = slice_rank(&basis, two_n, d);
        let rr = slice_rank(&rel_gens, two_n, d);
        let dim = ru.checked_sub(rr).ok_or_else(|| {
            Error::Internal("relation rank exceeds ambient rank".into())
        })?;
        if dim > 0 {
            dims.dims.insert(d, dim as u64);
        }
    }
    Ok(dims)
}
