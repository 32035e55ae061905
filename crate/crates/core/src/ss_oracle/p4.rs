//! Serre spectral sequence of the homotopy fibre `F → P → Q`,
//! `Q = S^m × S^{n-m}`, with `E^2 = H_*(P) ⊗ H_*(ΩQ)` and
//! `H_*(ΩQ) = Z[u, v]`, `|u| = m - 1`, `|v| = n - m - 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::linalg::SparseVec;
use super::pages::{Bidegree, Pages};
use super::GradedModule;
use crate::error::{Error, Result};
use crate::series::polynomial_two_var_series;
use crate::{Rational, Series};

/// Input data for the fibre computation: the degrees of the middle
/// cohomology generators of `P` and the two columns of the cup-product
/// matrix the differentials use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSInput {
    /// `|a_1| ≤ … ≤ |a_ℓ|`
    pub degrees: Vec<u32>,
    pub n: u32,
    pub m: u32,
    /// `c_{i1}` for `i = 1..ℓ`
    pub c_col1: Vec<BigInt>,
    /// `c_{iℓ}` for `i = 1..ℓ`
    pub c_col_l: Vec<BigInt>,
    pub cap: usize,
}

fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

impl SSInput {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `m = n - m`: both transgressions happen on the same page.
    pub fn is_balanced(&self) -> bool {
        2 * self.m == self.n
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.m, self.n);
        let bad = |msg: String| Err(Error::Validation(msg));
        if m < 2 || 2 * m > n {
            return bad(format!("need 1 < m <= n - m, got m = {m}, n = {n}"));
        }
        let l = self.degrees.len();
        if l < 2 {
            return bad("need at least the two generators a_1 and a_l".into());
        }
        if self.degrees.windows(2).any(|w| w[0] > w[1]) {
            return bad("degrees must be sorted".into());
        }
        if self.degrees[0] != m || self.degrees[l - 1] != n - m {
            return bad(format!("need |a_1| = {m} and |a_l| = {}", n - m));
        }
        if self.c_col1.len() != l || self.c_col_l.len() != l {
            return bad(format!("coefficient columns must have length {l}"));
        }
        if !self.c_col1[l - 1].is_one() {
            return bad("need c_l1 = 1".into());
        }
        if self.c_col_l[0] != sign((m * (n - m)) % 2 == 1) {
            return bad("need c_1l = (-1)^{m(n-m)}".into());
        }
        if !self.c_col1[0].is_zero() || !self.c_col_l[l - 1].is_zero() {
            return bad("need c_11 = c_ll = 0".into());
        }
        Ok(())
    }

    /// A random valid instance; `balanced` selects `m = n - m`.
    pub fn random(rng: &mut impl Rng, balanced: bool, cap: usize) -> SSInput {
        let m = rng.gen_range(2..=5u32);
        let top = if balanced { m } else { rng.gen_range(m + 1..=m + 5) };
        let n = m + top;
        let l = rng.gen_range(2..=10usize);
        let mut degrees: Vec<u32> = (0..l).map(|_| rng.gen_range(m..=top)).collect();
        degrees.sort_unstable();
        degrees[0] = m;
        degrees[l - 1] = top;
        let mut coeff = || BigInt::from(rng.gen_range(-3i64..=3));
        let mut c_col1: Vec<BigInt> = (0..l).map(|_| coeff()).collect();
        let mut c_col_l: Vec<BigInt> = (0..l).map(|_| coeff()).collect();
        c_col1[0] = BigInt::zero();
        c_col1[l - 1] = BigInt::one();
        c_col_l[0] = sign((m * top) % 2 == 1);
        c_col_l[l - 1] = BigInt::zero();
        SSInput {
            degrees,
            n,
            m,
            c_col1,
            c_col_l,
            cap,
        }
    }
}

/// `1 + (Σ_{i=2}^{ℓ-1} t^{|a_i|}) · series(Z[u,v])`.
pub fn p4_prediction(input: &SSInput) -> Result<Series> {
    input.validate()?;
    let cap = input.cap;
    let poly = polynomial_two_var_series(input.m - 1, input.n - input.m - 1, cap)?;
    let mut g = Series::zero(cap);
    let l = input.len();
    for &d in &input.degrees[1..l - 1] {
        if (d as usize) <= cap {
            g.set_coeff(d as usize, g.coeff(d as usize) + BigInt::one());
        }
    }
    Series::one(cap).add(&g.mul(&poly)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Gen {
    Unit,
    A(usize),
    Z,
}

/// Basis of `Z[u,v]` in each degree: exponent pairs `(a, b)`.
struct Monomials {
    du: u32,
    dv: u32,
    by_degree: Vec<Vec<(u32, u32)>>,
    index: BTreeMap<(u32, u32), usize>,
}

impl Monomials {
    fn new(du: u32, dv: u32, top: usize) -> Self {
        let mut by_degree = vec![Vec::new(); top + 1];
        let mut index = BTreeMap::new();
        for a in 0..=(top as u32 / du) {
            for b in 0..=((top as u32 - a * du) / dv) {
                let d = (a * du + b * dv) as usize;
                index.insert((a, b), by_degree[d].len());
                by_degree[d].push((a, b));
            }
        }
        Monomials {
            du,
            dv,
            by_degree,
            index,
        }
    }

    fn count(&self, q: u32) -> usize {
        self.by_degree.get(q as usize).map_or(0, Vec::len)
    }

    /// `g · u`, with the sign from moving `u` past the `v`s of `g`.
    fn times_u(&self, (a, b): (u32, u32)) -> ((u32, u32), BigInt) {
        ((a + 1, b), sign((b * self.du * self.dv) % 2 == 1))
    }

    fn times_v(&self, (a, b): (u32, u32)) -> ((u32, u32), BigInt) {
        ((a, b + 1), BigInt::one())
    }

    fn label(&self, (a, b): (u32, u32)) -> String {
        let pow = |x: &str, e: u32| match e {
            0 => String::new(),
            1 => x.to_string(),
            _ => format!("{x}^{e}"),
        };
        let s = format!("{}{}", pow("u", a), pow("v", b));
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}

struct Layout {
    columns: BTreeMap<u32, Vec<Gen>>,
    monos: Monomials,
    top: usize,
}

impl Layout {
    fn dims(&self) -> BTreeMap<Bidegree, usize> {
        let mut dims = BTreeMap::new();
        for (&p, gens) in &self.columns {
            for q in 0..=self.top.saturating_sub(p as usize) as u32 {
                if p as usize + q as usize <= self.top {
                    dims.insert((p, q), gens.len() * self.monos.count(q));
                }
            }
        }
        dims
    }

    fn decode(&self, (p, q): Bidegree, i: usize) -> (Gen, (u32, u32)) {
        let k = self.monos.count(q);
        (self.columns[&p][i / k], self.monos.by_degree[q as usize][i % k])
    }

    /// Coordinate of `gen ⊗ mono` in bidegree `(p, |mono|)`.
    fn encode(&self, p: u32, gen: Gen, mono: (u32, u32)) -> Option<usize> {
        let q = mono.0 * self.monos.du + mono.1 * self.monos.dv;
        if p as usize + q as usize > self.top {
            return None;
        }
        let g = self.columns[&p].iter().position(|&x| x == gen)?;
        Some(g * self.monos.count(q) + self.monos.index[&mono])
    }

    fn label(&self, s: Bidegree, i: usize) -> String {
        let (g, mono) = self.decode(s, i);
        let g = match g {
            Gen::Unit => "1".to_string(),
            Gen::A(i) => format!("a_{}", i + 1),
            Gen::Z => "z".to_string(),
        };
        format!("{g}⊗{}", self.monos.label(mono))
    }
}

/// Replays the spectral sequence and returns the `E^∞` ranks up to `cap`.
pub fn p4_e_infinity(input: &SSInput) -> Result<GradedModule> {
    input.validate()?;
    let (m, n, cap) = (input.m, input.n, input.cap);
    let l = input.len();
    let balanced = input.is_balanced();
    let top = cap + 1;

    let mut columns: BTreeMap<u32, Vec<Gen>> = BTreeMap::new();
    columns.entry(0).or_default().push(Gen::Unit);
    for (i, &d) in input.degrees.iter().enumerate() {
        columns.entry(d).or_default().push(Gen::A(i));
    }
    columns.entry(n).or_default().push(Gen::Z);
    let layout = Layout {
        columns,
        monos: Monomials::new(m - 1, n - m - 1, top),
        top,
    };

    let q = |c: &BigInt| Rational::from_integer(c.clone());
    let put = |out: &mut SparseVec<Rational>, idx: Option<usize>, c: BigInt| {
        if let Some(i) = idx {
            if !c.is_zero() {
                let v = out.remove(&i).unwrap_or_default() + q(&c);
                if !v.is_zero() {
                    out.insert(i, v);
                }
            }
        }
    };
    let z_sign = sign(balanced && m % 2 == 1);

    let d_m = |s: Bidegree, i: usize| -> SparseVec<Rational> {
        let mut out = SparseVec::new();
        let (g, mono) = layout.decode(s, i);
        let (gu, su) = layout.monos.times_u(mono);
        let (gv, sv) = layout.monos.times_v(mono);
        match g {
            Gen::A(0) => put(&mut out, layout.encode(0, Gen::Unit, gu), su),
            Gen::A(j) if balanced && j == l - 1 => put(&mut out, layout.encode(0, Gen::Unit, gv), sv),
            Gen::Z if !balanced => {
                for (j, &d) in input.degrees.iter().enumerate() {
                    if d == n - m {
                        let c = sign(d % 2 == 1) * &input.c_col1[j] * &su;
                        put(&mut out, layout.encode(n - m, Gen::A(j), gu), c);
                    }
                }
            }
            Gen::Z => {
                for j in 0..l {
                    let cu = &z_sign * &input.c_col1[j] * &su;
                    put(&mut out, layout.encode(m, Gen::A(j), gu), cu);
                    let cv = &z_sign * &input.c_col_l[j] * &sv;
                    put(&mut out, layout.encode(m, Gen::A(j), gv), cv);
                }
            }
            _ => {}
        }
        out
    };
    let d_top = |s: Bidegree, i: usize| -> SparseVec<Rational> {
        let mut out = SparseVec::new();
        let (g, mono) = layout.decode(s, i);
        if g == Gen::A(l - 1) {
            let (gv, sv) = layout.monos.times_v(mono);
            put(&mut out, layout.encode(0, Gen::Unit, gv), sv);
        }
        out
    };

    let mut pages: Pages<Rational> = Pages::new(layout.dims());
    for r in 2..=n {
        if r != m {
            if let Some(s) = pages.candidates(r).into_iter().find(|s| s.0 == n && s.0 + s.1 <= top as u32) {
                return Err(Error::Oracle(format!(
                    "possible d_{r} on the top class at bidegree {s:?} not covered by the argument"
                )));
            }
        }
        if r == m {
            pages.turn(r, d_m)?;
        } else if r == n - m && !balanced {
            pages.turn(r, d_top)?;
        }
    }

    let mut module = GradedModule::new(cap);
    for s in pages.bidegrees().collect::<Vec<_>>() {
        let t = s.0 + s.1;
        if t as usize > cap {
            continue;
        }
        for i in pages.basis_labels(s) {
            module.push(t, layout.label(s, i));
        }
    }
    Ok(module)
}
