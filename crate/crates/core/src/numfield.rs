//! Number fields presented by a monic integer polynomial, with ideal
//! arithmetic in Hermite normal form.
//!
//! Supported maximal orders: the rationals, any quadratic field (canonical
//! integral generator), and monogenic fields of degree up to 8 where the
//! Dedekind criterion certifies `Z[alpha]` maximal at every prime of the
//! polynomial discriminant. Internally every field is rewritten on the power
//! basis of an integral generator `theta` with `Z[theta]` maximal, so prime
//! splitting is always polynomial factorization modulo p.

use crate::error::{Error, Result};
use crate::finfield::{Fq, FqPoly, FqQuot};
use crate::intfactor;
use crate::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const MAX_DEGREE: usize = 8;

// ---------------------------------------------------------------------------
// integer polynomial helpers (little-endian coefficient vectors)
// ---------------------------------------------------------------------------

pub fn zpoly_trim(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn zpoly_degree(p: &[BigInt]) -> usize {
    assert!(!p.is_empty(), "degree of zero polynomial");
    p.len() - 1
}

pub fn zpoly_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn zpoly_derivative(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 1 {
        return vec![];
    }
    (1..p.len()).map(|i| &p[i] * BigInt::from(i)).collect()
}

pub fn zpoly_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

pub fn zpoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Resultant of two integer polynomials via the Sylvester determinant.
pub fn zpoly_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let n = zpoly_degree(f);
    let m = zpoly_degree(g);
    if n == 0 {
        return f[0].clone().pow(m as u32);
    }
    if m == 0 {
        return g[0].clone().pow(n as u32);
    }
    let size = n + m;
    let mut s = IntMatrix::zero(size, size);
    for row in 0..m {
        for (i, c) in f.iter().enumerate() {
            s.set(row, row + n - i, c.clone());
        }
    }
    for row in 0..n {
        for (i, c) in g.iter().enumerate() {
            s.set(m + row, row + m - i, c.clone());
        }
    }
    s.det()
}

/// Discriminant of a monic integer polynomial.
pub fn zpoly_discriminant(f: &[BigInt]) -> BigInt {
    let n = zpoly_degree(f);
    let res = zpoly_resultant(f, &zpoly_derivative(f));
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    BigInt::from(sign) * res
}

/// Number of real roots of a squarefree polynomial, by Sturm's theorem.
pub fn zpoly_real_roots(f: &[BigInt]) -> usize {
    type QPoly = Vec<BigRational>;
    fn trim(p: &mut QPoly) {
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
    }
    fn rem(a: &QPoly, b: &QPoly) -> QPoly {
        let mut r = a.clone();
        trim(&mut r);
        while !r.is_empty() && r.len() >= b.len() {
            let q = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let upd = &r[shift + i] - &q * c;
                r[shift + i] = upd;
            }
            trim(&mut r);
        }
        r
    }
    fn sign_at_infinity(p: &QPoly, positive: bool) -> i32 {
        let lead = p.last().unwrap();
        let s = if lead.is_positive() { 1 } else { -1 };
        if positive || (p.len() - 1) % 2 == 0 {
            s
        } else {
            -s
        }
    }
    let mut chain: Vec<QPoly> = Vec::new();
    chain.push(f.iter().map(|c| BigRational::from(c.clone())).collect());
    let mut d: QPoly = zpoly_derivative(f).iter().map(|c| BigRational::from(c.clone())).collect();
    trim(&mut d);
    if d.is_empty() {
        return 0;
    }
    chain.push(d);
    loop {
        let r = rem(&chain[chain.len() - 2], &chain[chain.len() - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    let variations = |positive: bool| {
        let mut count = 0;
        let mut last = 0i32;
        for p in &chain {
            let s = sign_at_infinity(p, positive);
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    };
    variations(false) - variations(true)
}

/// Factor a monic-capable integer polynomial modulo p into monic
/// irreducibles with multiplicities, sorted deterministically.
pub fn factor_poly_mod_p(f: &[BigInt], p: u64) -> Result<Vec<(Vec<u64>, u32)>> {
    let fp = Fq::prime(p)?;
    let coeffs: Vec<_> = f.iter().map(|c| fp.from_int(c)).collect();
    let poly = FqPoly::new(fp.clone(), coeffs);
    if poly.is_zero() {
        return Err(Error::BadInput(format!("polynomial vanishes modulo {p}")));
    }
    let fac = poly.factor()?;
    Ok(fac
        .into_iter()
        .map(|(g, m)| ((0..=g.degree()).map(|i| g.coeff(i)[0]).collect(), m))
        .collect())
}

/// Dedekind's criterion: is `Z[alpha]` (alpha a root of `f`) maximal at `p`?
pub fn dedekind_is_maximal(f: &[BigInt], p: u64) -> Result<bool> {
    let fp = Fq::prime(p)?;
    let fbar = FqPoly::new(fp.clone(), f.iter().map(|c| fp.from_int(c)).collect());
    let factors = fbar.factor()?;
    // radical and cofactor
    let mut gbar = FqPoly::one(fp.clone());
    for (gi, _) in &factors {
        gbar = gbar.mul(gi);
    }
    let hbar = fbar.divrem(&gbar)?.0;
    // monic integer lifts with coefficients in [0, p)
    let lift = |poly: &FqPoly| -> Vec<BigInt> {
        (0..=poly.degree()).map(|i| BigInt::from(poly.coeff(i)[0])).collect()
    };
    let g = lift(&gbar);
    let h = lift(&hbar);
    let gh = zpoly_mul(&g, &h);
    let mut t: Vec<BigInt> = Vec::new();
    let pb = BigInt::from(p);
    for i in 0..gh.len() {
        let fi = f.get(i).cloned().unwrap_or_else(BigInt::zero);
        let diff = &gh[i] - fi;
        let (q, r) = diff.div_rem(&pb);
        assert!(r.is_zero(), "g*h = f mod p by construction");
        t.push(q);
    }
    zpoly_trim(&mut t);
    if t.is_empty() {
        return Ok(true);
    }
    let tbar = FqPoly::new(fp.clone(), t.iter().map(|c| fp.from_int(c)).collect());
    let d = tbar.gcd(&gbar.gcd(&hbar)?)?;
    Ok(d.is_zero() || d.degree() == 0)
}

/// Irreducibility over the rationals: rational-root test, modular
/// certificates, degree-pattern analysis, and a complete Landau-Mignotte
/// bounded factor search as the last resort.
pub fn zpoly_is_irreducible(f: &[BigInt]) -> Result<bool> {
    let n = zpoly_degree(f);
    assert!(f[n].is_one(), "polynomial must be monic");
    if n == 1 {
        return Ok(true);
    }
    // monic: rational roots are integer divisors of the constant term
    if f[0].is_zero() {
        return Ok(false);
    }
    for (p, _) in intfactor::factor(&f[0])? {
        let _ = p;
    }
    let mut divisors = vec![BigInt::one()];
    for (p, e) in intfactor::factor(&f[0])? {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= BigInt::from(p);
            }
        }
        divisors = next;
    }
    for d in &divisors {
        if zpoly_eval(f, d).is_zero() || zpoly_eval(f, &(-d)).is_zero() {
            return Ok(false);
        }
    }
    if n <= 3 {
        return Ok(true);
    }
    // modular certificate and degree-pattern sieve
    let disc = zpoly_discriminant(f);
    let mut possible: Option<std::collections::BTreeSet<usize>> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 5 && p < 300 {
        if intfactor::is_prime_u64(p) && !(&disc % BigInt::from(p)).is_zero() {
            tried += 1;
            let fac = factor_poly_mod_p(f, p)?;
            if fac.len() == 1 && fac[0].1 == 1 {
                return Ok(true);
            }
            let degs: Vec<usize> = fac
                .iter()
                .flat_map(|(g, m)| std::iter::repeat(g.len() - 1).take(*m as usize))
                .collect();
            // all subset sums of factor degrees
            let mut sums = std::collections::BTreeSet::new();
            sums.insert(0usize);
            for d in degs {
                let prev: Vec<usize> = sums.iter().cloned().collect();
                for s in prev {
                    sums.insert(s + d);
                }
            }
            possible = Some(match possible {
                None => sums,
                Some(old) => old.intersection(&sums).cloned().collect(),
            });
        }
        p += 1;
    }
    if let Some(ref sums) = possible {
        if !sums.iter().any(|&d| d >= 1 && d <= n / 2) {
            return Ok(true);
        }
    }
    // complete bounded search for a monic factor of degree <= n/2
    let norm2 = f.iter().fold(BigInt::zero(), |acc, c| acc + c * c);
    let norm = isqrt_ceil(&norm2) + 1;
    for d in 2..=n / 2 {
        if let Some(sums) = &possible {
            if !sums.contains(&d) {
                continue;
            }
        }
        let mut bounds = Vec::new();
        for i in 0..d {
            bounds.push(&norm * BigInt::from(binomial(d, i)));
        }
        let total: BigInt = bounds
            .iter()
            .fold(BigInt::one(), |acc, b: &BigInt| acc * (BigInt::from(2) * b + 1));
        if total > BigInt::from(2_000_000u64) {
            return Err(Error::UnsupportedField(
                "cannot certify irreducibility within the search budget".into(),
            ));
        }
        let limits: Vec<i64> = bounds.iter().map(|b| b.to_i64().unwrap()).collect();
        let mut idx = vec![0i64; d];
        for (i, l) in limits.iter().enumerate() {
            idx[i] = -l;
        }
        loop {
            let mut g: Vec<BigInt> = idx.iter().map(|&c| BigInt::from(c)).collect();
            g.push(BigInt::one());
            if zpoly_divides(&g, f) {
                return Ok(false);
            }
            let mut i = 0;
            loop {
                if i == d {
                    // exhausted all candidates of this degree
                    break;
                }
                idx[i] += 1;
                if idx[i] <= limits[i] {
                    break;
                }
                idx[i] = -limits[i];
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    Ok(true)
}

fn zpoly_divides(g: &[BigInt], f: &[BigInt]) -> bool {
    // exact division of monic polynomials over Z
    let mut rem: Vec<BigInt> = f.to_vec();
    let d = g.len() - 1;
    while rem.len() > d {
        let c = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - d;
        for i in 0..=d {
            let upd = &rem[shift + i] - &c * &g[i];
            rem[shift + i] = upd;
        }
        zpoly_trim(&mut rem);
        if rem.len() > d && rem.last().unwrap().is_zero() {
            zpoly_trim(&mut rem);
        }
        if rem.is_empty() {
            return true;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc = 1u64;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

/// Parse a polynomial in the given variable with integer coefficients,
/// e.g. `x^2+5`, `x^3-2x+1`, `t^2+t+2`. Little-endian coefficients.
pub fn parse_zpoly(input: &str, var: char) -> Result<Vec<BigInt>> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::BadInput("empty polynomial".into()));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut add = |deg: usize, c: BigInt| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += c;
    };
    // split into signed terms
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let term: String = bytes[start..i].iter().collect();
        if term.is_empty() {
            return Err(Error::BadInput(format!("dangling sign in {input}")));
        }
        let (coeff_str, deg) = match term.find(var) {
            None => (term.as_str(), 0usize),
            Some(pos) => {
                let deg = match term[pos + 1..].strip_prefix('^') {
                    Some(e) => e
                        .parse::<usize>()
                        .map_err(|_| Error::BadInput(format!("bad exponent in {term}")))?,
                    None if term.len() == pos + 1 => 1,
                    None => return Err(Error::BadInput(format!("bad term {term}"))),
                };
                (term[..pos].trim_end_matches('*'), deg)
            }
        };
        let coeff = if coeff_str.is_empty() {
            BigInt::one()
        } else {
            coeff_str
                .parse::<BigInt>()
                .map_err(|_| Error::BadInput(format!("bad coefficient in {term}")))?
        };
        add(deg, sign * coeff);
    }
    zpoly_trim(&mut coeffs);
    if coeffs.is_empty() {
        return Err(Error::BadInput("zero polynomial".into()));
    }
    Ok(coeffs)
}

/// The field specification grammar: the literal `Q` or a monic integer
/// polynomial in `x`.
pub fn parse_field_spec(spec: &str) -> Result<NumberField> {
    let s = spec.trim();
    if s == "Q" || s == "q" {
        return Ok(NumberField::rationals());
    }
    NumberField::new(&parse_zpoly(s, 'x')?)
}

// ---------------------------------------------------------------------------
// the number field
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum FieldKind {
    Rationals,
    /// Quadratic with squarefree core m; the integral generator is
    /// `(1+sqrt(m))/2` when m = 1 mod 4 and `sqrt(m)` otherwise.
    Quadratic { m: BigInt },
    /// `Z[alpha]` certified maximal by the Dedekind criterion.
    Monogenic,
}

/// A number field `Q[x]/(f)` together with its maximal order on the power
/// basis of the canonical integral generator.
#[derive(Clone)]
pub struct NumberField {
    defining_poly: Vec<BigInt>,
    degree: usize,
    kind: FieldKind,
    /// Minimal polynomial of the integral generator theta (monic, integer).
    theta_poly: Vec<BigInt>,
    /// Reductions of theta^(n+k), k = 0..n-2, on the theta power basis.
    power_reductions: Vec<Vec<BigInt>>,
    /// Column j = theta^j written in powers of the defining root alpha.
    integral_basis: Vec<Vec<BigRational>>,
    /// alpha written on the theta power basis.
    alpha_coords: Vec<BigInt>,
    discriminant: BigInt,
    r1: usize,
    r2: usize,
}

/// An element on the integral (theta-power) basis, exact rational coords.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub coords: Vec<BigRational>,
}

impl std::fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*w"),
                _ => format!("{c}*w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl NumberField {
    /// The rational field, presented by the polynomial `x`.
    pub fn rationals() -> NumberField {
        NumberField::new(&[BigInt::zero(), BigInt::one()]).expect("Q is supported")
    }

    pub fn quadratic(d: i64) -> Result<NumberField> {
        NumberField::new(&[BigInt::from(-d), BigInt::zero(), BigInt::one()])
    }

    pub fn new(poly: &[BigInt]) -> Result<NumberField> {
        let mut f = poly.to_vec();
        zpoly_trim(&mut f);
        if f.len() < 2 {
            return Err(Error::UnsupportedField("defining polynomial must be nonconstant".into()));
        }
        let n = zpoly_degree(&f);
        if !f[n].is_one() {
            return Err(Error::UnsupportedField("defining polynomial must be monic".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::UnsupportedField(format!(
                "degree {n} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        if n > 1 && !zpoly_is_irreducible(&f)? {
            return Err(Error::UnsupportedField("defining polynomial is reducible".into()));
        }
        let (kind, theta_poly, integral_basis, alpha_coords, discriminant) = if n == 1 {
            (
                FieldKind::Rationals,
                vec![BigInt::zero(), BigInt::one()],
                vec![vec![BigRational::one()]],
                vec![-f[0].clone()],
                BigInt::one(),
            )
        } else if n == 2 {
            let b = f[1].clone();
            let c = f[0].clone();
            let disc_f = &b * &b - BigInt::from(4) * &c;
            let (m, s) = intfactor::squarefree_part(&disc_f)?;
            let one = BigRational::one();
            if m.mod_floor(&BigInt::from(4)).is_one() {
                // theta = (1 + sqrt m)/2, alpha = (-b - s)/2 + s*theta
                let theta_poly =
                    vec![(BigInt::one() - &m) / BigInt::from(4), -BigInt::one(), BigInt::one()];
                let alpha = vec![(-&b - &s) / BigInt::from(2), s.clone()];
                // theta in alpha powers: (s + b)/(2s) + (1/s) alpha
                let theta_col = vec![
                    BigRational::new(&s + &b, BigInt::from(2) * &s),
                    BigRational::new(BigInt::one(), s.clone()),
                ];
                (
                    FieldKind::Quadratic { m: m.clone() },
                    theta_poly,
                    vec![vec![one, BigRational::zero()], theta_col],
                    alpha,
                    m,
                )
            } else {
                // theta = sqrt m, alpha = -b/2 + (s/2) theta
                let theta_poly = vec![-&m, BigInt::zero(), BigInt::one()];
                let alpha = vec![-&b / BigInt::from(2), &s / BigInt::from(2)];
                let theta_col = vec![
                    BigRational::new(b.clone(), s.clone()),
                    BigRational::new(BigInt::from(2), s.clone()),
                ];
                (
                    FieldKind::Quadratic { m: m.clone() },
                    theta_poly,
                    vec![vec![one, BigRational::zero()], theta_col],
                    alpha,
                    BigInt::from(4) * &m,
                )
            }
        } else {
            let disc_f = zpoly_discriminant(&f);
            for (p, e) in intfactor::factor(&disc_f)? {
                if e >= 2 && !dedekind_is_maximal(&f, p)? {
                    return Err(Error::UnsupportedOrder(format!(
                        "Z[alpha] is not maximal at {p} and no special-case basis applies"
                    )));
                }
            }
            let basis: Vec<Vec<BigRational>> = (0..n)
                .map(|j| {
                    (0..n)
                        .map(|i| if i == j { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect();
            let mut alpha = vec![BigInt::zero(); n];
            alpha[1] = BigInt::one();
            (FieldKind::Monogenic, f.clone(), basis, alpha, disc_f)
        };
        // reductions of theta^(n+k)
        let tn = zpoly_degree(&theta_poly);
        let mut power_reductions: Vec<Vec<BigInt>> = Vec::new();
        let mut cur: Vec<BigInt> = (0..tn).map(|i| -theta_poly[i].clone()).collect();
        power_reductions.push(cur.clone());
        for _ in 1..tn.max(1) - 1 {
            // multiply by theta: shift then reduce the top coefficient
            let top = cur[tn - 1].clone();
            let mut next = vec![BigInt::zero(); tn];
            for i in (1..tn).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..tn {
                next[i] -= &top * &theta_poly[i];
            }
            cur = next;
            power_reductions.push(cur.clone());
        }
        let r1 = if n == 1 { 1 } else { zpoly_real_roots(&f) };
        let r2 = (n - r1) / 2;
        assert_eq!(r1 + 2 * r2, n, "signature must satisfy r1 + 2 r2 = degree");
        Ok(NumberField {
            defining_poly: f,
            degree: n,
            kind,
            theta_poly,
            power_reductions,
            integral_basis,
            alpha_coords,
            discriminant,
            r1,
            r2,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.defining_poly
    }

    pub fn theta_poly(&self) -> &[BigInt] {
        &self.theta_poly
    }

    pub fn integral_basis(&self) -> &[Vec<BigRational>] {
        &self.integral_basis
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn unit_rank(&self) -> usize {
        self.r1 + self.r2 - 1
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind, FieldKind::Rationals)
    }

    /// Squarefree core m of a quadratic field, if quadratic.
    pub fn quadratic_core(&self) -> Option<&BigInt> {
        match &self.kind {
            FieldKind::Quadratic { m } => Some(m),
            _ => None,
        }
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        self.defining_poly == other.defining_poly
    }

    // -- elements -----------------------------------------------------------

    pub fn zero(&self) -> FieldElement {
        FieldElement { coords: vec![BigRational::zero(); self.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn theta(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree > 1 {
            e.coords[1] = BigRational::one();
        }
        e
    }

    /// The root of the defining polynomial, on the integral basis.
    pub fn alpha(&self) -> FieldElement {
        FieldElement { coords: self.alpha_coords.iter().map(|c| BigRational::from(c.clone())).collect() }
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = q;
        e
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        self.from_rational(BigRational::from(n.clone()))
    }

    pub fn from_integer_coords(&self, coords: &[BigInt]) -> FieldElement {
        assert_eq!(coords.len(), self.degree);
        FieldElement { coords: coords.iter().map(|c| BigRational::from(c.clone())).collect() }
    }

    pub fn is_zero_elem(&self, a: &FieldElement) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one_elem(&self, a: &FieldElement) -> bool {
        a.coords[0].is_one() && a.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.degree;
        if n == 1 {
            return FieldElement { coords: vec![&a.coords[0] * &b.coords[0]] };
        }
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for i in 0..n {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.coords[j].is_zero() {
                    continue;
                }
                let upd = &conv[i + j] + &a.coords[i] * &b.coords[j];
                conv[i + j] = upd;
            }
        }
        let mut out: Vec<BigRational> = conv[..n].to_vec();
        for k in 0..n - 1 {
            if conv[n + k].is_zero() {
                continue;
            }
            for i in 0..n {
                let upd = &out[i] + &conv[n + k] * BigRational::from(self.power_reductions[k][i].clone());
                out[i] = upd;
            }
        }
        FieldElement { coords: out }
    }

    pub fn pow(&self, a: &FieldElement, k: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn pow_i64(&self, a: &FieldElement, k: i64) -> Result<FieldElement> {
        if k >= 0 {
            Ok(self.pow(a, k as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(&inv, (-k) as u64))
        }
    }

    /// Multiplication matrix of `a` on the integral basis (rational entries).
    pub fn mult_matrix(&self, a: &FieldElement) -> Vec<Vec<BigRational>> {
        let n = self.degree;
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.clone();
        cols.push(cur.coords.clone());
        for _ in 1..n {
            cur = self.mul(&cur, &self.theta());
            cols.push(cur.coords.clone());
        }
        cols
    }

    /// Multiplication matrix of an integral element, as an integer matrix.
    pub fn mult_matrix_int(&self, a: &FieldElement) -> IntMatrix {
        let cols = self.mult_matrix(a);
        let n = self.degree;
        let mut m = IntMatrix::zero(n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                assert!(c.is_integer(), "element is not integral");
                m.set(i, j, c.to_integer());
            }
        }
        m
    }

    pub fn norm(&self, a: &FieldElement) -> BigRational {
        let cols = self.mult_matrix(a);
        rational_det(&cols)
    }

    pub fn trace(&self, a: &FieldElement) -> BigRational {
        let cols = self.mult_matrix(a);
        (0..self.degree).map(|i| cols[i][i].clone()).fold(BigRational::zero(), |x, y| x + y)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero_elem(a) {
            return Err(Error::ZeroElement);
        }
        let cols = self.mult_matrix(a);
        let mut rhs = vec![BigRational::zero(); self.degree];
        rhs[0] = BigRational::one();
        let sol = rational_solve(&cols, &rhs).ok_or(Error::ZeroElement)?;
        Ok(FieldElement { coords: sol })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn is_integral(&self, a: &FieldElement) -> bool {
        a.coords.iter().all(|c| c.is_integer())
    }

    /// Smallest positive integer `d` with `d*a` integral.
    pub fn denominator(&self, a: &FieldElement) -> BigInt {
        a.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn integer_coords(&self, a: &FieldElement) -> Vec<BigInt> {
        assert!(self.is_integral(a));
        a.coords.iter().map(|c| c.to_integer()).collect()
    }
}

fn rational_det(cols: &[Vec<BigRational>]) -> BigRational {
    let n = cols.len();
    // clear denominators columnwise and use the exact integer determinant
    let mut m = IntMatrix::zero(n, n);
    let mut den = BigInt::one();
    for (j, col) in cols.iter().enumerate() {
        let d = col.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        for (i, c) in col.iter().enumerate() {
            m.set(i, j, (c * BigRational::from(d.clone())).to_integer());
        }
        den *= d;
    }
    BigRational::new(m.det(), den)
}

fn rational_solve(cols: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    // rows of the augmented system
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..=n {
            let upd = &a[col][j] * &inv;
            a[col][j] = upd;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..=n {
                let upd = &a[r][j] - &factor * &a[col][j];
                a[r][j] = upd;
            }
        }
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

// ---------------------------------------------------------------------------
// ideals
// ---------------------------------------------------------------------------

/// A fractional ideal `num/den` of the maximal order, `num` a full-rank HNF
/// lattice on the integral basis.
#[derive(Clone, PartialEq, Eq)]
pub struct IdealRec {
    pub num: IntMatrix,
    pub den: BigInt,
}

impl std::fmt::Debug for IdealRec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IdealRec(den={}, num={:?})", self.den, self.num)
    }
}

/// A prime ideal in two-element representation `(p, gen)` together with its
/// HNF lattice and residue data.
#[derive(Clone)]
pub struct PrimeIdealRec {
    pub residue_char: u64,
    /// Position among the primes above p in the deterministic order.
    pub index: usize,
    pub gen: FieldElement,
    pub residue_degree: usize,
    pub ramification_index: usize,
    pub hnf_basis: IntMatrix,
    /// Monic irreducible factor of the generator polynomial mod p.
    pub residue_modulus: Vec<u64>,
}

impl PartialEq for PrimeIdealRec {
    fn eq(&self, other: &Self) -> bool {
        self.residue_char == other.residue_char && self.index == other.index
    }
}
impl Eq for PrimeIdealRec {}

impl PrimeIdealRec {
    pub fn key(&self) -> PrimeKey {
        PrimeKey { p: self.residue_char, index: self.index }
    }

    pub fn norm(&self) -> BigInt {
        BigInt::from(self.residue_char).pow(self.residue_degree as u32)
    }

    pub fn residue_field(&self) -> Result<FqQuot> {
        let fp = Fq::prime(self.residue_char)?;
        let coeffs: Vec<_> = self.residue_modulus.iter().map(|&c| fp.from_u64(c)).collect();
        Ok(FqQuot::new(FqPoly::new(fp, coeffs)))
    }

    pub fn selector(&self) -> String {
        format!("{}:{}", self.residue_char, self.index)
    }
}

impl std::fmt::Debug for PrimeIdealRec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "P({}:{}, e={}, f={})",
            self.residue_char, self.index, self.ramification_index, self.residue_degree
        )
    }
}

/// Canonical sort key for primes: residue characteristic, then position in
/// the deterministic splitting order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeKey {
    pub p: u64,
    pub index: usize,
}

impl std::fmt::Display for PrimeKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.p, self.index)
    }
}

impl NumberField {
    pub fn unit_ideal(&self) -> IdealRec {
        IdealRec { num: IntMatrix::identity(self.degree), den: BigInt::one() }
    }

    fn canonical_ideal(&self, num: IntMatrix, den: BigInt) -> IdealRec {
        let h = num.hnf();
        let mut g = den.clone();
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                g = g.gcd(h.at(r, c));
            }
        }
        if g.is_one() || g.is_zero() {
            return IdealRec { num: h, den };
        }
        let mut reduced = IntMatrix::zero(h.rows(), h.cols());
        for r in 0..h.rows() {
            for c in 0..h.cols() {
                reduced.set(r, c, h.at(r, c) / &g);
            }
        }
        IdealRec { num: reduced, den: den / g }
    }

    /// Ideal generated by a list of integral elements (as a lattice; the
    /// list must already span an O-module).
    fn ideal_from_integral_columns(&self, cols: Vec<Vec<BigInt>>) -> IdealRec {
        let m = IntMatrix::from_cols(self.degree, &cols);
        let h = m.hnf();
        assert_eq!(h.hnf_pivots().len(), self.degree, "ideal lattice must have full rank");
        let trimmed = IntMatrix::from_cols(self.degree, &(0..self.degree).map(|c| h.col(c)).collect::<Vec<_>>());
        self.canonical_ideal(trimmed, BigInt::one())
    }

    pub fn principal_ideal(&self, a: &FieldElement) -> Result<IdealRec> {
        if self.is_zero_elem(a) {
            return Err(Error::ZeroElement);
        }
        let den = self.denominator(a);
        let scaled = FieldElement {
            coords: a.coords.iter().map(|c| c * BigRational::from(den.clone())).collect(),
        };
        let m = self.mult_matrix_int(&scaled);
        let cols: Vec<Vec<BigInt>> = (0..self.degree).map(|j| m.col(j)).collect();
        let ideal = self.ideal_from_integral_columns(cols);
        Ok(self.canonical_ideal(ideal.num, ideal.den * den))
    }

    pub fn ideal_mul(&self, a: &IdealRec, b: &IdealRec) -> IdealRec {
        let n = self.degree;
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            let ai = self.from_integer_coords(&a.num.col(i));
            let mi = self.mult_matrix_int(&ai);
            for j in 0..n {
                cols.push(mi.mul_vec(&b.num.col(j)));
            }
        }
        let prod = self.ideal_from_integral_columns(cols);
        self.canonical_ideal(prod.num, prod.den * &a.den * &b.den)
    }

    pub fn ideal_norm(&self, a: &IdealRec) -> BigRational {
        let det = a.num.det().abs();
        BigRational::new(det, a.den.clone().pow(self.degree as u32))
    }

    pub fn ideal_eq(&self, a: &IdealRec, b: &IdealRec) -> bool {
        let ca = self.canonical_ideal(a.num.clone(), a.den.clone());
        let cb = self.canonical_ideal(b.num.clone(), b.den.clone());
        ca == cb
    }

    pub fn ideal_is_integral(&self, a: &IdealRec) -> bool {
        a.den.is_one()
    }

    /// Does the ideal contain the element?
    pub fn ideal_contains(&self, a: &IdealRec, x: &FieldElement) -> bool {
        // need den_a * x to be in the num lattice
        let scaled: Vec<BigRational> =
            x.coords.iter().map(|c| c * BigRational::from(a.den.clone())).collect();
        if scaled.iter().any(|c| !c.is_integer()) {
            return false;
        }
        let v: Vec<BigInt> = scaled.iter().map(|c| c.to_integer()).collect();
        a.num.lattice_contains(&v)
    }

    pub fn ideal_contains_ideal(&self, a: &IdealRec, b: &IdealRec) -> bool {
        // a >= b as lattices, accounting for denominators: b/den_b <= a/den_a
        // iff den_a * num_b <= den_b * num_a
        let scale = |m: &IntMatrix, s: &BigInt| {
            let mut out = m.clone();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    out.set(r, c, m.at(r, c) * s);
                }
            }
            out
        };
        scale(&a.num, &b.den).lattice_contains_all(&scale(&b.num, &a.den))
    }

    pub fn ideal_inverse(&self, a: &IdealRec) -> IdealRec {
        let n = self.degree;
        // stack the multiplication matrices of the integral basis of num
        let mut rows: Vec<IntMatrix> = Vec::new();
        for j in 0..n {
            let b = self.from_integer_coords(&a.num.col(j));
            rows.push(self.mult_matrix_int(&b));
        }
        let mut stacked = IntMatrix::zero(n * n, n);
        for (k, m) in rows.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    stacked.set(k * n + r, c, m.at(r, c).clone());
                }
            }
        }
        // row lattice of `stacked` = column lattice of its transpose
        let h = stacked.transpose().hnf();
        let basis = IntMatrix::from_cols(n, &(0..n).map(|c| h.col(c)).collect::<Vec<_>>());
        let ht = basis.transpose();
        let det = ht.det().abs();
        // columns of det * (ht)^{-1}
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = det.clone();
            cols.push(ht.solve(&e).expect("full-rank dual solve"));
        }
        let inv_num = IntMatrix::from_cols(n, &cols);
        // (num/den)^{-1} = den * (num)^{-1}
        let mut scaled = inv_num.clone();
        for r in 0..n {
            for c in 0..n {
                scaled.set(r, c, inv_num.at(r, c) * &a.den);
            }
        }
        self.canonical_ideal(scaled, det)
    }

    pub fn ideal_pow(&self, a: &IdealRec, k: i64) -> IdealRec {
        if k == 0 {
            return self.unit_ideal();
        }
        let base = if k > 0 { a.clone() } else { self.ideal_inverse(a) };
        let mut acc = self.unit_ideal();
        for _ in 0..k.abs() {
            acc = self.ideal_mul(&acc, &base);
        }
        acc
    }

    pub fn prime_to_ideal(&self, p: &PrimeIdealRec) -> IdealRec {
        IdealRec { num: p.hnf_basis.clone(), den: BigInt::one() }
    }

    /// Splitting of a rational prime into prime ideals, in the canonical
    /// deterministic order.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdealRec>> {
        if !intfactor::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if !dedekind_is_maximal(&self.theta_poly, p)? {
            return Err(Error::UnsupportedOrder(format!(
                "order is not maximal at {p}; no special-case basis applies"
            )));
        }
        let fac = factor_poly_mod_p(&self.theta_poly, p)?;
        let n = self.degree;
        let mut out = Vec::new();
        let mut efsum = 0usize;
        for (index, (gbar, e)) in fac.iter().enumerate() {
            let f = gbar.len() - 1;
            efsum += f * (*e as usize);
            // generator g(theta) with coefficients lifted into [0, p)
            let mut coords = vec![BigInt::zero(); n];
            for (i, &c) in gbar.iter().enumerate() {
                if i < n {
                    coords[i] = BigInt::from(c);
                } else {
                    // inert case: reduce theta^n away using the minimal polynomial
                    let red = &self.power_reductions;
                    for k in 0..n {
                        coords[k] += BigInt::from(c) * &red[i - n][k];
                    }
                }
            }
            let gen = self.from_integer_coords(&coords);
            let mut cols: Vec<Vec<BigInt>> = Vec::new();
            for j in 0..n {
                let mut col = vec![BigInt::zero(); n];
                col[j] = BigInt::from(p);
                cols.push(col);
            }
            let mg = self.mult_matrix_int(&gen);
            for j in 0..n {
                cols.push(mg.col(j));
            }
            let lattice = IntMatrix::from_cols(n, &cols).hnf();
            let basis = IntMatrix::from_cols(n, &(0..n).map(|c| lattice.col(c)).collect::<Vec<_>>());
            assert_eq!(
                basis.det().abs(),
                BigInt::from(p).pow(f as u32),
                "prime lattice determinant must be p^f"
            );
            out.push(PrimeIdealRec {
                residue_char: p,
                index,
                gen,
                residue_degree: f,
                ramification_index: *e as usize,
                hnf_basis: basis,
                residue_modulus: gbar.clone(),
            });
        }
        assert_eq!(efsum, n, "sum of e_i f_i must equal the degree");
        // product of primes with multiplicity must be pO
        let mut prod = self.unit_ideal();
        for pr in &out {
            for _ in 0..pr.ramification_index {
                prod = self.ideal_mul(&prod, &self.prime_to_ideal(pr));
            }
        }
        let p_ideal = self.principal_ideal(&self.from_bigint(&BigInt::from(p)))?;
        assert!(self.ideal_eq(&prod, &p_ideal), "product of primes above p must equal pO");
        Ok(out)
    }

    pub fn prime_by_key(&self, key: PrimeKey) -> Result<PrimeIdealRec> {
        let primes = self.split_prime(key.p)?;
        primes
            .into_iter()
            .find(|q| q.index == key.index)
            .ok_or_else(|| Error::BadInput(format!("no prime with selector {key}")))
    }

    /// Valuation of an integral lattice at P (largest k with L <= P^k).
    fn lattice_valuation(&self, lattice: &IdealRec, p: &PrimeIdealRec) -> i64 {
        assert!(lattice.den.is_one());
        let prime = self.prime_to_ideal(p);
        let mut power = prime.clone();
        let mut v = 0i64;
        loop {
            if !self.ideal_contains_ideal(&power, lattice) {
                return v;
            }
            v += 1;
            power = self.ideal_mul(&power, &prime);
        }
    }

    /// Exact P-adic valuation of a fractional ideal.
    pub fn ideal_valuation(&self, a: &IdealRec, p: &PrimeIdealRec) -> i64 {
        let num_part =
            self.lattice_valuation(&IdealRec { num: a.num.clone(), den: BigInt::one() }, p);
        let den_v = intfactor::valuation_int(&a.den, p.residue_char) as i64;
        num_part - den_v * p.ramification_index as i64
    }

    /// Exact P-adic valuation of a nonzero field element.
    pub fn valuation(&self, a: &FieldElement, p: &PrimeIdealRec) -> Result<i64> {
        if self.is_zero_elem(a) {
            return Err(Error::ZeroElement);
        }
        let ideal = self.principal_ideal(a)?;
        Ok(self.ideal_valuation(&ideal, p))
    }

    /// Factor a fractional ideal into primes.
    pub fn ideal_factor(&self, a: &IdealRec) -> Result<Vec<(PrimeIdealRec, i64)>> {
        let norm_num = a.num.det().abs();
        let mut rational_primes: Vec<u64> =
            intfactor::factor(&norm_num)?.into_iter().map(|(p, _)| p).collect();
        for (p, _) in intfactor::factor(&a.den)? {
            if !rational_primes.contains(&p) {
                rational_primes.push(p);
            }
        }
        rational_primes.sort_unstable();
        let mut out = Vec::new();
        for p in rational_primes {
            for prime in self.split_prime(p)? {
                let v = self.ideal_valuation(a, &prime);
                if v != 0 {
                    out.push((prime, v));
                }
            }
        }
        Ok(out)
    }

    /// Reduce an element at a prime: the image in the residue field. The
    /// coordinate denominator must be coprime to p.
    pub fn reduce_mod_prime(&self, a: &FieldElement, prime: &PrimeIdealRec) -> Result<FqPoly> {
        let p = prime.residue_char;
        let den = self.denominator(a);
        if (&den % BigInt::from(p)).is_zero() {
            return Err(Error::BadInput(format!(
                "cannot reduce: coordinate denominator {den} shares the residue characteristic {p}"
            )));
        }
        let rf = prime.residue_field()?;
        let fp = Fq::prime(p)?;
        let num_coords: Vec<BigInt> =
            a.coords.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
        let poly = FqPoly::new(fp.clone(), num_coords.iter().map(|c| fp.from_int(c)).collect());
        let mut r = rf.reduce(&poly);
        // divide by the denominator
        let dinv = rf.inv(&FqPoly::constant(fp.clone(), fp.from_int(&den)))?;
        r = rf.mul(&r, &dinv);
        Ok(r)
    }

    /// Is `v_P(a - 1) >= 1` (the multiplicative one-unit condition)?
    pub fn is_one_mod_prime(&self, a: &FieldElement, prime: &PrimeIdealRec) -> Result<bool> {
        if self.is_zero_elem(a) {
            return Ok(false);
        }
        if self.valuation(a, prime)? != 0 {
            return Ok(false);
        }
        let am1 = self.sub(a, &self.one());
        if self.is_zero_elem(&am1) {
            return Ok(true);
        }
        Ok(self.valuation(&am1, prime)? >= 1)
    }

    /// CRT: an integral element congruent to `targets[i]` modulo
    /// `primes[i]`, for pairwise distinct primes. The result is reduced into
    /// a fundamental box of the product lattice.
    pub fn crt(&self, primes: &[PrimeIdealRec], targets: &[FieldElement]) -> Result<FieldElement> {
        assert_eq!(primes.len(), targets.len());
        if primes.is_empty() {
            return Ok(self.zero());
        }
        let n = self.degree;
        let mut product = self.unit_ideal();
        for p in primes {
            product = self.ideal_mul(&product, &self.prime_to_ideal(p));
        }
        let mut acc = self.zero();
        for (i, prime) in primes.iter().enumerate() {
            // complement ideal: product of the others
            let mut others = self.unit_ideal();
            for (j, q) in primes.iter().enumerate() {
                if j != i {
                    others = self.ideal_mul(&others, &self.prime_to_ideal(q));
                }
            }
            // solve 1 = u + v with u in P_i, v in the complement
            let stacked = prime.hnf_basis.hstack(&others.num);
            let mut e0 = vec![BigInt::zero(); n];
            e0[0] = BigInt::one();
            let sol = stacked
                .solve(&e0)
                .ok_or_else(|| Error::NonSquarefreeModulus("primes are not pairwise coprime".into()))?;
            let v_coords = others.num.mul_vec(&sol[n..]);
            let idem = self.from_integer_coords(&v_coords);
            assert!(self.is_integral(&targets[i]), "CRT targets must be integral");
            acc = self.add(&acc, &self.mul(&targets[i], &idem));
        }
        // canonical representative modulo the product lattice
        let coords = self.integer_coords(&acc);
        let reduced = lattice_reduce(&product.num, &coords);
        Ok(self.from_integer_coords(&reduced))
    }
}

/// Reduce a vector into the fundamental box of a full-rank HNF lattice.
pub fn lattice_reduce(hnf: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = v.to_vec();
    for (r, c) in hnf.hnf_pivots().into_iter().rev() {
        let piv = hnf.at(r, c);
        let q = out[r].div_floor(piv);
        if q.is_zero() {
            continue;
        }
        for i in 0..hnf.rows() {
            let upd = &out[i] - &q * hnf.at(i, c);
            out[i] = upd;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> NumberField {
        NumberField::new(&[BigInt::one(), BigInt::zero(), BigInt::one()]).unwrap()
    }

    #[test]
    fn rationals_basics() {
        let q = NumberField::rationals();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.signature(), (1, 0));
        let six = q.from_int(6);
        assert_eq!(q.norm(&six), BigRational::from(BigInt::from(6)));
    }

    #[test]
    fn gaussian_field_structure() {
        let k = gaussian();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.signature(), (0, 1));
        assert_eq!(k.discriminant(), &BigInt::from(-4));
        let i = k.theta();
        let m1 = k.mul(&i, &i);
        assert_eq!(m1, k.from_int(-1));
        let one_plus_i = k.add(&k.one(), &i);
        assert_eq!(k.norm(&one_plus_i), BigRational::from(BigInt::from(2)));
    }

    #[test]
    fn sqrt5_integral_basis_is_half_integral() {
        // index 2: the maximal order contains (1+sqrt5)/2
        let k = NumberField::new(&[BigInt::from(-5), BigInt::zero(), BigInt::one()]).unwrap();
        assert_eq!(k.discriminant(), &BigInt::from(5));
        // the defining root alpha = sqrt5 = 2*theta - 1
        let alpha = k.alpha();
        let expect = k.sub(&k.mul(&k.from_int(2), &k.theta()), &k.one());
        assert_eq!(alpha, expect);
        let n = k.norm(&k.theta());
        assert_eq!(n, BigRational::from(BigInt::from(-1)));
    }

    #[test]
    fn dedekind_criterion_fixed_cases() {
        // x^2+1 at 2: Z[i] is maximal
        let f = vec![BigInt::one(), BigInt::zero(), BigInt::one()];
        assert!(dedekind_is_maximal(&f, 2).unwrap());
        // x^2-5 at 2: index 2
        let g = vec![BigInt::from(-5), BigInt::zero(), BigInt::one()];
        assert!(!dedekind_is_maximal(&g, 2).unwrap());
        // x^2+5 at 2: maximal (disc -20 = 4 * -5)
        let h = vec![BigInt::from(5), BigInt::zero(), BigInt::one()];
        assert!(dedekind_is_maximal(&h, 2).unwrap());
    }

    #[test]
    fn split_5_in_gaussian() {
        let k = gaussian();
        let primes = k.split_prime(5).unwrap();
        assert_eq!(primes.len(), 2);
        for p in &primes {
            assert_eq!(p.ramification_index, 1);
            assert_eq!(p.residue_degree, 1);
        }
    }

    #[test]
    fn split_2_in_gaussian_is_ramified() {
        let k = gaussian();
        let primes = k.split_prime(2).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].ramification_index, 2);
        assert_eq!(primes[0].residue_degree, 1);
        // (1+i) generates it
        let one_plus_i = k.add(&k.one(), &k.theta());
        assert_eq!(k.valuation(&one_plus_i, &primes[0]).unwrap(), 1);
    }

    #[test]
    fn split_3_in_sqrt_minus5() {
        let k = NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::one()]).unwrap();
        let primes = k.split_prime(3).unwrap();
        assert_eq!(primes.len(), 2);
        assert!(primes.iter().all(|p| p.norm() == BigInt::from(3)));
    }

    #[test]
    fn ideal_product_of_conjugates_in_gaussian() {
        let k = gaussian();
        let i = k.theta();
        let a = k.principal_ideal(&k.add(&k.one(), &i)).unwrap();
        let b = k.principal_ideal(&k.sub(&k.one(), &i)).unwrap();
        let two = k.principal_ideal(&k.from_int(2)).unwrap();
        assert!(k.ideal_eq(&k.ideal_mul(&a, &b), &two));
        // norm of (7) is 49
        let seven = k.principal_ideal(&k.from_int(7)).unwrap();
        assert_eq!(k.ideal_norm(&seven), BigRational::from(BigInt::from(49)));
        // unit ideal is a multiplicative identity
        let unit = k.unit_ideal();
        assert!(k.ideal_eq(&k.ideal_mul(&a, &unit), &a));
    }

    #[test]
    fn ideal_inverse_roundtrip() {
        let k = NumberField::new(&[BigInt::from(5), BigInt::zero(), BigInt::one()]).unwrap();
        let p2 = &k.split_prime(2).unwrap()[0];
        let ideal = k.prime_to_ideal(p2);
        let inv = k.ideal_inverse(&ideal);
        let prod = k.ideal_mul(&ideal, &inv);
        assert!(k.ideal_eq(&prod, &k.unit_ideal()));
    }

    #[test]
    fn principal_ideal_of_6_over_q() {
        let q = NumberField::rationals();
        let f = q.principal_ideal(&q.from_int(6)).unwrap();
        let fac = q.ideal_factor(&f).unwrap();
        let summary: Vec<(u64, i64)> =
            fac.iter().map(|(p, v)| (p.residue_char, *v)).collect();
        assert_eq!(summary, vec![(2, 1), (3, 1)]);
    }

    #[test]
    fn valuations_are_additive() {
        let k = gaussian();
        let p5 = &k.split_prime(5).unwrap()[0];
        let a = k.add(&k.from_int(2), &k.theta()); // 2+i, norm 5
        let b = k.add(&k.from_int(1), &k.mul(&k.from_int(2), &k.theta())); // 1+2i
        let va = k.valuation(&a, p5).unwrap();
        let vb = k.valuation(&b, p5).unwrap();
        let vab = k.valuation(&k.mul(&a, &b), p5).unwrap();
        assert_eq!(vab, va + vb);
    }

    #[test]
    fn crt_hits_targets() {
        let q = NumberField::rationals();
        let p3 = &q.split_prime(3).unwrap()[0];
        let p5 = &q.split_prime(5).unwrap()[0];
        let a = q.crt(&[p3.clone(), p5.clone()], &[q.from_int(2), q.from_int(1)]).unwrap();
        let v = a.coords[0].to_integer();
        assert_eq!(v.mod_floor(&BigInt::from(3)), BigInt::from(2));
        assert_eq!(v.mod_floor(&BigInt::from(5)), BigInt::from(1));
    }

    #[test]
    fn reduce_mod_prime_in_quadratic() {
        let k = gaussian();
        let p5s = k.split_prime(5).unwrap();
        let i = k.theta();
        // i reduces to a square root of -1 mod 5, i.e. 2 or 3
        let r0 = k.reduce_mod_prime(&i, &p5s[0]).unwrap();
        let r1 = k.reduce_mod_prime(&i, &p5s[1]).unwrap();
        let c0 = r0.coeff(0)[0];
        let c1 = r1.coeff(0)[0];
        assert_ne!(c0, c1);
        assert!(matches!(c0, 2 | 3));
        assert!(matches!(c1, 2 | 3));
    }

    #[test]
    fn irreducibility_of_x4_plus_1() {
        // reducible modulo every prime, so the bounded search must decide
        let f = vec![BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()];
        assert!(zpoly_is_irreducible(&f).unwrap());
        let g = vec![BigInt::from(-1), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()];
        assert!(!zpoly_is_irreducible(&g).unwrap());
    }

    #[test]
    fn cyclotomic_field_of_conductor_5() {
        let k = NumberField::new(&[
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
            BigInt::one(),
        ])
        .unwrap();
        assert_eq!(k.degree(), 4);
        assert_eq!(k.signature(), (0, 2));
        assert_eq!(k.discriminant(), &BigInt::from(125));
        let primes = k.split_prime(5).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].ramification_index, 4);
    }

    #[test]
    fn signature_of_real_quadratic() {
        let k = NumberField::new(&[BigInt::from(-2), BigInt::zero(), BigInt::one()]).unwrap();
        assert_eq!(k.signature(), (2, 0));
        assert_eq!(k.discriminant(), &BigInt::from(8));
    }
}
