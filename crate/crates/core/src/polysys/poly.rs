//! Sparse multivariate integer polynomials with exact coefficients.
//!
//! An [`IntPoly`] is a map from exponent vectors to `BigInt` coefficients.
//! The variable at index 0 is the primary variable `y` when the polynomial
//! lives inside a shift system; polynomials in parameters only (no `y`)
//! reuse the same type with the container deciding what each slot means.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::PolyError;

/// Exponent vector aligned with the owning container's variable registry.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over Z.
///
/// Invariants: no stored coefficient is zero and every monomial has
/// exactly `nvars` exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        IntPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = IntPoly::zero(nvars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The monomial `var_i` with coefficient 1.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigInt::from(1));
        IntPoly { nvars, terms }
    }

    /// Builds from raw `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(
        nvars: usize,
        it: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self, PolyError> {
        let mut p = IntPoly::zero(nvars);
        for (exps, c) in it {
            if exps.len() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from ascending coefficients `c0 + c1 v + ...`
    /// placed at variable `i` of an `nvars`-slot registry.
    pub fn from_univariate(nvars: usize, i: usize, coeffs: &[i64]) -> Self {
        let mut p = IntPoly::zero(nvars);
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut exps = vec![0; nvars];
                exps[i] = k as u32;
                p.add_term(exps, BigInt::from(c));
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, exps: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        IntPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        IntPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale_i64(&self, k: i64) -> IntPoly {
        self.scale(&BigInt::from(k))
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = IntPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Monomial = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::constant(self.nvars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Re-registers the polynomial in a larger registry; new variables get
    /// exponent zero.
    pub fn extend_vars(&self, nvars: usize) -> IntPoly {
        assert!(nvars >= self.nvars);
        if nvars == self.nvars {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (e2, c.clone())
            })
            .collect();
        IntPoly { nvars, terms }
    }

    /// Degree in variable `i`; 0 for the zero polynomial (check
    /// [`IntPoly::is_zero`] separately).
    pub fn deg_var(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Total degree across all variables; 0 for the zero polynomial.
    pub fn total_deg(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// True when the polynomial has no variable dependence at all.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Coefficient of `var_i^k` as a polynomial over the same registry
    /// (the extracted variable's exponent is zeroed).
    pub fn coeff_of_power(&self, i: usize, k: u32) -> IntPoly {
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Leading coefficient and degree in variable `i`.
    pub fn leading_in_var(&self, i: usize) -> Result<(IntPoly, u32), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let d = self.deg_var(i);
        Ok((self.coeff_of_power(i, d), d))
    }

    /// Substitutes `replacement` for variable `i`. Both polynomials must
    /// share the registry.
    pub fn substitute(&self, i: usize, replacement: &IntPoly) -> IntPoly {
        debug_assert_eq!(self.nvars, replacement.nvars);
        let mut pow_cache: Vec<IntPoly> = vec![IntPoly::constant(self.nvars, 1)];
        let mut out = IntPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while pow_cache.len() <= k {
                let next = pow_cache.last().unwrap().mul(replacement);
                pow_cache.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mut base = IntPoly::zero(self.nvars);
            base.add_term(rest, c.clone());
            out = out.add(&base.mul(&pow_cache[k]));
        }
        out
    }

    /// Exact evaluation at integer arguments (one per registry slot).
    pub fn eval(&self, args: &[BigInt]) -> Result<BigInt, PolyError> {
        if args.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: args.len(),
            });
        }
        // Power tables per variable, up to the degree actually used.
        let mut tables: Vec<Vec<BigInt>> = args
            .iter()
            .map(|a| vec![BigInt::from(1), a.clone()])
            .collect();
        for (i, t) in tables.iter_mut().enumerate() {
            let d = self.deg_var(i) as usize;
            while t.len() <= d {
                let next = t.last().unwrap() * &args[i];
                t.push(next);
            }
        }
        let mut acc = BigInt::from(0);
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m *= &tables[i][k as usize];
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Renders with the supplied variable names, deterministic term order.
    pub fn display(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if k == 1 {
                    mono.push_str(names[i]);
                } else {
                    let _ = write!(mono, "{}^{}", names[i], k);
                }
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {} ", sign);
            }
            if mono.is_empty() {
                let _ = write!(out, "{}", abs);
            } else if abs == BigInt::from(1) {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{}*{}", abs, mono);
            }
        }
        out
    }
}

/// Vector-valued polynomial expressed as coefficients of the owning
/// system's direction vectors: the map is `sum_j components[j] * v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecPoly {
    components: Vec<IntPoly>,
}

impl VecPoly {
    pub fn new(components: Vec<IntPoly>) -> Result<Self, PolyError> {
        if components.is_empty() {
            return Err(PolyError::EmptySystem);
        }
        let nv = components[0].nvars();
        if components.iter().any(|c| c.nvars() != nv) {
            return Err(PolyError::ArityMismatch {
                expected: nv,
                got: components.iter().map(|c| c.nvars()).max().unwrap(),
            });
        }
        Ok(VecPoly { components })
    }

    pub fn zero(l: usize, nvars: usize) -> Self {
        VecPoly {
            components: vec![IntPoly::zero(nvars); l],
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    pub fn component(&self, j: usize) -> &IntPoly {
        &self.components[j]
    }

    pub fn components(&self) -> &[IntPoly] {
        &self.components
    }

    /// All components identically zero.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VecPoly) -> VecPoly {
        debug_assert_eq!(self.len(), other.len());
        VecPoly {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VecPoly) -> VecPoly {
        debug_assert_eq!(self.len(), other.len());
        VecPoly {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn substitute(&self, i: usize, replacement: &IntPoly) -> VecPoly {
        VecPoly {
            components: self
                .components
                .iter()
                .map(|c| c.substitute(i, replacement))
                .collect(),
        }
    }

    pub fn extend_vars(&self, nvars: usize) -> VecPoly {
        VecPoly {
            components: self.components.iter().map(|c| c.extend_vars(nvars)).collect(),
        }
    }

    /// Largest `y`-degree among components; the component-basis notion of
    /// degree (the geometric map degree is computed through coordinate
    /// projections, see `ShiftPolySystem`).
    pub fn component_deg_y(&self) -> u32 {
        self.components.iter().map(|c| c.deg_var(0)).max().unwrap_or(0)
    }

    /// Leading term in `y`, component basis: returns `(uc, d)` with
    /// `self = uc * y^d + lower order` where `uc` collects each
    /// component's `y^d` coefficient.
    pub fn leading_y_term(&self) -> Result<(VecPoly, u32), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let d = self.component_deg_y();
        let comps = self
            .components
            .iter()
            .map(|c| c.coeff_of_power(0, d))
            .collect();
        Ok((VecPoly { components: comps }, d))
    }

    /// Scalar polynomial `pi_i(self) = sum_j components[j] * v_j[i]`.
    pub fn coordinate_poly(&self, directions: &[Vec<i64>], i: usize) -> IntPoly {
        let mut acc = IntPoly::zero(self.nvars());
        for (j, comp) in self.components.iter().enumerate() {
            let w = directions[j][i];
            if w != 0 && !comp.is_zero() {
                acc = acc.add(&comp.scale_i64(w));
            }
        }
        acc
    }

    /// Exact evaluation of the map at `(y, h)`: `sum_j R_j(y,h) v_j`.
    pub fn evaluate(
        &self,
        directions: &[Vec<i64>],
        y: &BigInt,
        h: &[BigInt],
    ) -> Result<Vec<BigInt>, PolyError> {
        let nv = self.nvars();
        if h.len() + 1 != nv {
            return Err(PolyError::ArityMismatch {
                expected: nv - 1,
                got: h.len(),
            });
        }
        let mut args = Vec::with_capacity(nv);
        args.push(y.clone());
        args.extend_from_slice(h);
        let d = directions[0].len();
        let mut out = vec![BigInt::from(0); d];
        for (j, comp) in self.components.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let val = comp.eval(&args)?;
            for (i, o) in out.iter_mut().enumerate() {
                *o += &val * directions[j][i];
            }
        }
        Ok(out)
    }
}
