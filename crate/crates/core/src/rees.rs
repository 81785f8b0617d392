//! Rees rings of monomial complete intersections `(x_s^{v_s}, ..., x_n^{v_n})`
//! in characteristic `p`, their affine charts, and the related ideals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitmod::PresentedAlgebra;
use crate::groebner::Ideal;
use crate::polyring::{is_prime, CoefficientField, Polynomial, Ring};

/// Parameters of a Rees-ring instance: `𝔞 = (x_s^{v_s}, ..., x_n^{v_n})`
/// over `F_p`, with `p | v_i` for `i <= l` and `v_i = 1` for `i > l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesParams {
    pub p: u64,
    pub n: usize,
    pub s: usize,
    pub l: usize,
    /// Exponents `v_s..v_n`.
    pub v: Vec<u32>,
    /// Additionally require `v_s..v_l` to be powers of `p`.
    #[serde(skip)]
    pub strict_p_power: bool,
}

impl ReesParams {
    pub fn new(p: u64, n: usize, s: usize, l: usize, v: Vec<u32>) -> Result<Self> {
        let params = ReesParams { p, n, s, l, v, strict_p_power: false };
        params.validate()?;
        Ok(params)
    }

    /// Checks every invariant and names the first one violated.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Validation(m));
        if !is_prime(self.p) {
            return fail(format!("p = {} is not prime", self.p));
        }
        if self.s < 1 {
            return fail("s must be at least 1".into());
        }
        if self.s > self.l {
            return fail(format!("s = {} exceeds l = {}", self.s, self.l));
        }
        if self.l >= self.n {
            return fail(format!("l = {} must be less than n = {}", self.l, self.n));
        }
        if self.v.len() != self.n - self.s + 1 {
            return fail(format!("v has {} entries, expected n - s + 1 = {}", self.v.len(), self.n - self.s + 1));
        }
        for i in self.s..=self.n {
            let vi = self.exponent(i);
            if vi == 0 {
                return fail(format!("v_{i} must be positive"));
            }
            if i <= self.l {
                if !(vi as u64).is_multiple_of(self.p) {
                    return fail(format!("p = {} does not divide v_{i} = {vi}", self.p));
                }
                if self.strict_p_power && !is_power_of(vi as u64, self.p) {
                    return fail(format!("v_{i} = {vi} is not a power of p = {}", self.p));
                }
            } else if vi != 1 {
                return fail(format!("v_{i} = {vi} must be 1 since {i} > l = {}", self.l));
            }
        }
        Ok(())
    }

    /// `v_i` for `s <= i <= n`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.v[i - self.s]
    }

    pub fn field(&self) -> CoefficientField {
        CoefficientField::Prime(self.p)
    }

    pub fn to_ci(&self) -> MonomialCi {
        MonomialCi {
            field: self.field(),
            n: self.n,
            support: (self.s..=self.n).map(|i| (i, self.exponent(i))).collect(),
        }
    }
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

impl fmt::Display for ReesParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(u32::to_string).collect();
        write!(f, "p={} n={} s={} l={} v={}", self.p, self.n, self.s, self.l, v.join(","))
    }
}

impl FromStr for ReesParams {
    type Err = Error;

    /// Parses `p=2 n=3 s=1 l=2 v=2,2,1` (any field order) and validates.
    fn from_str(text: &str) -> Result<Self> {
        let params = ReesParams::parse_unchecked(text)?;
        params.validate()?;
        Ok(params)
    }
}

impl ReesParams {
    /// Parses the `key=value` syntax without checking the invariants.
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        let (mut p, mut n, mut s, mut l, mut v) = (None, None, None, None, None);
        for tok in text.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Validation(format!("expected key=value, found {tok:?}")))?;
            let num = |x: &str| x.parse::<u64>().map_err(|_| Error::Validation(format!("bad number {x:?} for {key}")));
            match key {
                "p" => p = Some(num(val)?),
                "n" => n = Some(num(val)? as usize),
                "s" => s = Some(num(val)? as usize),
                "l" => l = Some(num(val)? as usize),
                "v" => {
                    let vs = val
                        .split(',')
                        .map(|x| num(x).and_then(|e| u32::try_from(e).map_err(|_| Error::ExponentOverflow)))
                        .collect::<Result<Vec<_>>>()?;
                    v = Some(vs);
                }
                _ => return Err(Error::Validation(format!("unknown key {key:?}"))),
            }
        }
        let need = |name: &str| Error::Validation(format!("missing {name}"));
        Ok(ReesParams {
            p: p.ok_or_else(|| need("p"))?,
            n: n.ok_or_else(|| need("n"))?,
            s: s.ok_or_else(|| need("s"))?,
            l: l.ok_or_else(|| need("l"))?,
            v: v.ok_or_else(|| need("v"))?,
            strict_p_power: false,
        })
    }
}

/// Reads a grid file: one parameter line per tuple, `#` starts a comment.
/// Lines are parsed but not validated; each keeps its own result.
pub fn parse_grid(text: &str) -> Vec<(String, Result<ReesParams>)> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(|line| (line.to_string(), ReesParams::parse_unchecked(line)))
        .collect()
}

/// A monomial complete intersection `(x_i^{e_i} : (i, e_i) in support)` in
/// `k[x_1..x_n]`, with 1-based indices. This covers inputs outside the
/// shape required by [`ReesParams`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCi {
    pub field: CoefficientField,
    pub n: usize,
    pub support: Vec<(usize, u32)>,
}

/// The degree-zero part of the localization of the Rees ring at `T_r`.
/// Variables are `x1..xn` followed by `U_i` for each support index
/// `i != r`; `U_i` stands for `T_i / T_r`.
#[derive(Debug, Clone)]
pub struct ChartAlgebra {
    pub r: usize,
    pub algebra: PresentedAlgebra,
}

impl MonomialCi {
    pub fn new(field: CoefficientField, n: usize, support: Vec<(usize, u32)>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &(i, e) in &support {
            if i == 0 || i > n {
                return Err(Error::Validation(format!("index {i} outside 1..={n}")));
            }
            if seen[i] {
                return Err(Error::Validation(format!("index {i} repeated")));
            }
            if e == 0 {
                return Err(Error::Validation(format!("exponent of x{i} must be positive")));
            }
            seen[i] = true;
        }
        if support.is_empty() {
            return Err(Error::Validation("empty support".into()));
        }
        Ok(MonomialCi { field, n, support })
    }

    fn x_names(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("x{i}")).collect()
    }

    fn t_names(&self) -> Vec<String> {
        self.support.iter().map(|(i, _)| format!("T{i}")).collect()
    }

    /// `k[x1..xn]`.
    pub fn base_ring(&self) -> Ring {
        Ring::new(self.field.clone(), self.x_names()).expect("valid names")
    }

    /// `k[x1..xn, T_i (i in support)]`.
    pub fn rees_ring(&self) -> Ring {
        Ring::new(self.field.clone(), self.x_names().into_iter().chain(self.t_names())).expect("valid names")
    }

    /// The ideal itself, in `ring` (which must contain `x1..xn`).
    pub fn ideal_in(&self, ring: &Ring) -> Ideal {
        let gens = self.support.iter().map(|&(i, e)| x_pow(ring, i, e)).collect();
        Ideal::new(ring, gens).expect("same ring")
    }

    /// The binomials `x_i^{e_i} T_j - x_j^{e_j} T_i` for support indices
    /// `i < j` (in support order), in `ring`.
    pub fn binomials_in(&self, ring: &Ring) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (a, &(i, ei)) in self.support.iter().enumerate() {
            for &(j, ej) in &self.support[a + 1..] {
                let lhs = &x_pow(ring, i, ei) * &t_var(ring, j);
                let rhs = &x_pow(ring, j, ej) * &t_var(ring, i);
                out.push(&lhs - &rhs);
            }
        }
        out
    }

    pub fn rees_presentation(&self) -> PresentedAlgebra {
        let ring = self.rees_ring();
        PresentedAlgebra::new(Ideal::new(&ring, self.binomials_in(&ring)).expect("same ring"))
    }

    /// Presentation of the chart at `T_r` by elimination: in
    /// `k[x, U, T, w]` take `J + (w T_r - 1) + (U_i - w T_i)`, eliminate the
    /// `T`'s and `w`.
    pub fn chart_presentation(&self, r: usize) -> Result<ChartAlgebra> {
        if !self.support.iter().any(|&(i, _)| i == r) {
            return Err(Error::Validation(format!("chart index {r} is not in the support")));
        }
        let u_names: Vec<String> =
            self.support.iter().filter(|&&(i, _)| i != r).map(|(i, _)| format!("U{i}")).collect();
        let chart_ring =
            Ring::new(self.field.clone(), self.x_names().into_iter().chain(u_names.iter().cloned())).expect("valid names");
        let w_name = "w";
        let big = Ring::new(
            self.field.clone(),
            chart_ring.vars().iter().cloned().chain(self.t_names()).chain([w_name.to_string()]),
        )
        .expect("valid names");
        let w = big.var(w_name)?;
        let mut gens = self.binomials_in(&big);
        gens.push(&(&w * &t_var(&big, r)) - &big.one());
        for &(i, _) in self.support.iter().filter(|&&(i, _)| i != r) {
            gens.push(&big.var(&format!("U{i}"))? - &(&w * &t_var(&big, i)));
        }
        let relations = Ideal::new(&big, gens)?.contract(&chart_ring)?;
        // keep the reduced basis as the presentation, so output is canonical
        let relations = Ideal::new(&chart_ring, relations.gb().to_vec())?;
        Ok(ChartAlgebra { r, algebra: PresentedAlgebra::new(relations) })
    }

    /// Kernel of `k[x, T] -> k[x, t]`, `T_i -> x_i^{e_i} t`, computed by
    /// eliminating `t`.
    pub fn micali_kernel(&self) -> Ideal {
        let rees = self.rees_ring();
        let (big, idx) = rees.extend(&["t"]);
        let t = big.gen(idx[0]);
        let gens = self.support.iter().map(|&(i, e)| &t_var(&big, i) - &(&x_pow(&big, i, e) * &t)).collect();
        let kernel = Ideal::new(&big, gens).expect("same ring").contract(&rees).expect("names match");
        Ideal::new(&rees, kernel.gb().to_vec()).expect("same ring")
    }
}

fn x_pow(ring: &Ring, i: usize, e: u32) -> Polynomial {
    ring.var(&format!("x{i}")).expect("x variable present").pow(e)
}

fn t_var(ring: &Ring, i: usize) -> Polynomial {
    ring.var(&format!("T{i}")).expect("T variable present")
}

/// The Rees ring `k[x1..xn, T_s..T_n] / J` of the parameters.
pub fn rees_presentation(params: &ReesParams) -> Result<PresentedAlgebra> {
    params.validate()?;
    Ok(params.to_ci().rees_presentation())
}

/// `(x_s^{v_s}, ..., x_n^{v_n}, T_s, ..., T_l) + J`.
pub fn target_ideal(params: &ReesParams) -> Result<Ideal> {
    let rees = rees_presentation(params)?;
    let ring = rees.ring();
    let ci = params.to_ci();
    let ts = (params.s..=params.l).map(|i| t_var(ring, i));
    rees.relations().sum(&ci.ideal_in(ring))?.with_generators(ts)
}

/// `𝔞 + J`, the ideal of the exceptional divisor.
pub fn exceptional_ideal(params: &ReesParams) -> Result<Ideal> {
    let rees = rees_presentation(params)?;
    rees.relations().sum(&params.to_ci().ideal_in(rees.ring()))
}

/// The chart at `T_r`, `s <= r <= n`.
pub fn chart_presentation(params: &ReesParams, r: usize) -> Result<ChartAlgebra> {
    params.validate()?;
    if r < params.s || r > params.n {
        return Err(Error::Validation(format!("chart index r = {r} outside {}..={}", params.s, params.n)));
    }
    params.to_ci().chart_presentation(r)
}

pub fn micali_kernel(params: &ReesParams) -> Result<Ideal> {
    params.validate()?;
    Ok(params.to_ci().micali_kernel())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: usize, s: usize, l: usize, v: &[u32]) -> ReesParams {
        ReesParams::new(p, n, s, l, v.to_vec()).unwrap()
    }

    #[test]
    fn validation_names_the_invariant() {
        let msg = |r: Result<ReesParams>| match r {
            Err(Error::Validation(m)) => m,
            other => panic!("expected validation error, got {other:?}"),
        };
        assert!(msg(ReesParams::new(4, 2, 1, 1, vec![4, 1])).contains("prime"));
        assert!(msg(ReesParams::new(2, 2, 1, 2, vec![2, 2])).contains("less than n"));
        assert!(msg(ReesParams::new(2, 3, 1, 1, vec![2, 1])).contains("entries"));
        assert!(msg(ReesParams::new(3, 2, 1, 1, vec![2, 1])).contains("does not divide"));
        assert!(msg(ReesParams::new(2, 2, 1, 1, vec![2, 3])).contains("must be 1"));
        assert!(msg(ReesParams::new(2, 3, 2, 1, vec![2, 1])).contains("exceeds"));
        let mut strict = params(3, 2, 1, 1, &[6, 1]);
        strict.strict_p_power = true;
        assert!(strict.validate().is_err());
        strict.v = vec![9, 1];
        assert!(strict.validate().is_ok());
    }

    #[test]
    fn params_round_trip() {
        let p = params(2, 3, 1, 2, &[2, 2, 1]);
        assert_eq!(p.to_string(), "p=2 n=3 s=1 l=2 v=2,2,1");
        assert_eq!(p.to_string().parse::<ReesParams>().unwrap(), p);
        assert!("p=2 n=3 s=1".parse::<ReesParams>().is_err());
        assert!("p=2 n=3 s=1 l=2 v=2,2,1 q=1".parse::<ReesParams>().is_err());
        let grid = parse_grid("# header\np=2 n=2 s=1 l=1 v=2,1  # trailing\n\np=2 n=2 s=1 l=2 v=2,2\n");
        assert_eq!(grid.len(), 2);
        assert!(grid[0].1.is_ok());
        assert!(grid[1].1.as_ref().unwrap().validate().is_err());
    }

    #[test]
    fn rees_relations() {
        let a = rees_presentation(&params(2, 2, 1, 1, &[2, 1])).unwrap();
        assert_eq!(a.ring().vars(), &["x1", "x2", "T1", "T2"]);
        assert_eq!(a.relations().generators(), &[a.ring().parse("x1^2*T2 - x2*T1").unwrap()]);

        let b = rees_presentation(&params(2, 3, 2, 2, &[2, 1])).unwrap();
        assert_eq!(b.relations().generators(), &[b.ring().parse("x2^2*T3 - x3*T2").unwrap()]);

        for (pp, n, s, l, v) in [(2, 3, 1, 2, vec![2, 2, 1]), (3, 4, 1, 2, vec![3, 3, 1, 1]), (2, 4, 2, 3, vec![2, 2, 1])] {
            let a = rees_presentation(&params(pp, n, s, l, &v)).unwrap();
            let k = n - s + 1;
            assert_eq!(a.ring().nvars(), n + k);
            assert_eq!(a.relations().generators().len(), k * (k - 1) / 2);
        }
    }

    #[test]
    fn target_and_exceptional() {
        let pr = params(2, 2, 1, 1, &[2, 1]);
        let t = target_ideal(&pr).unwrap();
        let ring = t.ring().clone();
        assert!(t.equals(&Ideal::parse(&ring, "x1^2, x2, T1, x1^2*T2 - x2*T1").unwrap()));
        let e = exceptional_ideal(&pr).unwrap();
        assert!(e.equals(&Ideal::parse(&ring, "x1^2, x2, x1^2*T2 - x2*T1").unwrap()));
        assert!(t.contains_ideal(&e));

        let t = target_ideal(&params(2, 3, 2, 2, &[2, 1])).unwrap();
        assert!(t.equals(&Ideal::parse(t.ring(), "x2^2, x3, T2, x2^2*T3 - x3*T2").unwrap()));
    }

    #[test]
    fn charts() {
        for p in [2u64, 3] {
            let pr = params(p, 2, 1, 1, &[p as u32, 1]);
            let c = chart_presentation(&pr, 2).unwrap();
            let ring = c.algebra.ring();
            assert_eq!(ring.vars(), &["x1", "x2", "U1"]);
            let expected = Ideal::parse(ring, &format!("x1^{p} - x2*U1")).unwrap();
            assert!(c.algebra.relations().equals(&expected));
        }
        assert!(chart_presentation(&params(2, 2, 1, 1, &[2, 1]), 3).is_err());

        for p in [2u64, 3] {
            let ci = MonomialCi::new(CoefficientField::Prime(p), 4, vec![(3, p as u32), (4, (p * p) as u32)]).unwrap();
            let c = ci.chart_presentation(3).unwrap();
            let expected = Ideal::parse(c.algebra.ring(), &format!("U4*x3^{p} - x4^{}", p * p)).unwrap();
            assert!(c.algebra.relations().equals(&expected));
        }
    }

    #[test]
    fn chart_maps_into_localized_rees_ring() {
        for pr in [params(2, 3, 1, 2, &[2, 2, 1]), params(3, 3, 1, 1, &[3, 1, 1]), params(2, 4, 2, 3, &[2, 2, 1])] {
            let rees = rees_presentation(&pr).unwrap();
            for r in pr.s..=pr.n {
                let chart = chart_presentation(&pr, r).unwrap();
                let (big, idx) = rees.ring().extend(&["w"]);
                let w = big.gen(idx[0]);
                let t_r = big.var(&format!("T{r}")).unwrap();
                let local = rees.relations().embed(&big).unwrap().with_generators([&(&w * &t_r) - &big.one()]).unwrap();
                let images: Vec<Polynomial> = chart
                    .algebra
                    .ring()
                    .vars()
                    .iter()
                    .map(|v| match v.strip_prefix('U') {
                        Some(i) => &big.var(&format!("T{i}")).unwrap() * &w,
                        None => big.var(v).unwrap(),
                    })
                    .collect();
                for rel in chart.algebra.relations().generators() {
                    assert!(local.contains(&rel.substitute(&big, &images).unwrap()), "{pr} r={r}");
                }
                // the exceptional divisor is cut by x_r on charts with v_r = 1
                if r > pr.l {
                    let e = pr.to_ci().ideal_in(chart.algebra.ring()).sum(chart.algebra.relations()).unwrap();
                    let xr = Ideal::new(chart.algebra.ring(), vec![chart.algebra.ring().var(&format!("x{r}")).unwrap()])
                        .unwrap()
                        .sum(chart.algebra.relations())
                        .unwrap();
                    assert!(e.equals(&xr), "{pr} r={r}");
                }
            }
        }
    }

    #[test]
    fn micali() {
        for pr in [params(2, 2, 1, 1, &[2, 1]), params(2, 3, 1, 2, &[2, 2, 1]), params(3, 4, 2, 3, &[3, 9, 1])] {
            let k = micali_kernel(&pr).unwrap();
            assert!(k.equals(rees_presentation(&pr).unwrap().relations()), "{pr}");
        }
        let single = MonomialCi::new(CoefficientField::Prime(2), 2, vec![(2, 2)]).unwrap();
        assert!(single.micali_kernel().is_zero());
    }
}
