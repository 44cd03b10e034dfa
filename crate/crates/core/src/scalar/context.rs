use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::cyclo::Cyclo;
use super::field::CycloField;
use crate::error::{Error, Result};

/// Tolerance of the float equality backend.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// How identities are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Reduction modulo Φ_M; authoritative.
    #[default]
    Exact,
    /// Comparison of complex embeddings within [`FLOAT_TOLERANCE`].
    Float,
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Precondition(format!("unknown backend '{other}'"))),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

/// The scalars of C_{2n}^{(N)}: q, ζ, ω, ω^{1/2} and √N, all inside Q(ζ_M), M = 16N².
#[derive(Debug)]
pub struct ScalarContext {
    dim: u32,
    field: Arc<CycloField>,
    q_exp: u32,
    zeta_exp: u32,
    omega_exp: u32,
    omega_sqrt_exp: u32,
    q: Cyclo,
    zeta: Cyclo,
    omega: Cyclo,
    omega_sqrt: Cyclo,
    sqrt_n: Cyclo,
}

impl ScalarContext {
    /// Builds the context for qudit dimension `dim` (N).
    ///
    /// ζ = exp(iπ(N+1)/N). ω is located as the root of unity ζ_M^t whose square
    /// equals (Σ ζ^{i²})²/N exactly and whose argument matches the numerical
    /// sum; √N is then recovered as (Σ ζ^{i²})·conj(ω).
    pub fn new(dim: u32) -> Result<Arc<Self>> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let n = dim as i64;
        let m = 16 * dim * dim;
        let field = Arc::new(CycloField::new(m));
        let q_exp = (16 * n) as u32 % m;
        let zeta_exp = ((8 * n * (n + 1)) % m as i64) as u32;
        let q = Cyclo::root(&field, q_exp as i64);
        let zeta = Cyclo::root(&field, zeta_exp as i64);

        let gauss = (0..n)
            .map(|i| Cyclo::root(&field, zeta_exp as i64 * i * i))
            .fold(Cyclo::zero(&field), |a, b| a + b);
        let omega_sq = (&gauss * &gauss).scale(&BigRational::new(1.into(), n.into()));

        let unknown = Error::RootOfUnity { n: dim, modulus: m };
        let approx = gauss.embed();
        if approx.norm() < 1e-6 {
            return Err(unknown);
        }
        let t = (approx.arg() / std::f64::consts::TAU * m as f64).round() as i64;
        let t = t.rem_euclid(m as i64);
        if Cyclo::root(&field, 2 * t) != omega_sq {
            return Err(unknown);
        }
        let omega = Cyclo::root(&field, t);
        if (omega.embed() - approx / approx.norm()).norm() > 1e-9 {
            return Err(unknown);
        }
        let sqrt_n = &gauss * &omega.conj();

        // principal branch: signed exponent in (-M/2, M/2]
        let signed = if t > m as i64 / 2 { t - m as i64 } else { t };
        if signed % 2 != 0 {
            return Err(unknown);
        }
        let omega_sqrt_exp = (signed / 2).rem_euclid(m as i64) as u32;
        let omega_sqrt = Cyclo::root(&field, omega_sqrt_exp as i64);

        let ctx = ScalarContext {
            dim,
            field,
            q_exp,
            zeta_exp,
            omega_exp: t as u32,
            omega_sqrt_exp,
            q,
            zeta,
            omega,
            omega_sqrt,
            sqrt_n,
        };
        ctx.check_invariants()?;
        Ok(Arc::new(ctx))
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.dim as i64;
        let fail = |what: &str| Err(Error::Precondition(format!("scalar invariant failed for N={n}: {what}")));
        if &self.zeta * &self.zeta != self.q {
            return fail("zeta^2 = q");
        }
        if !self.zeta.pow(n * n)?.is_one() {
            return fail("zeta^(N^2) = 1");
        }
        if &self.sqrt_n * &self.sqrt_n != self.int(n) {
            return fail("sqrtN^2 = N");
        }
        let s = self.sqrt_n.embed();
        if s.re <= 0.0 || s.im.abs() > 1e-9 {
            return fail("sqrtN > 0");
        }
        if !(&self.omega * &self.omega.conj()).is_one() {
            return fail("|omega| = 1");
        }
        if &self.omega_sqrt * &self.omega_sqrt != self.omega {
            return fail("omega_sqrt^2 = omega");
        }
        Ok(())
    }

    /// N.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// M = 16N².
    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn q(&self) -> &Cyclo {
        &self.q
    }

    pub fn zeta(&self) -> &Cyclo {
        &self.zeta
    }

    pub fn omega(&self) -> &Cyclo {
        &self.omega
    }

    pub fn omega_sqrt(&self) -> &Cyclo {
        &self.omega_sqrt
    }

    pub fn sqrt_n(&self) -> &Cyclo {
        &self.sqrt_n
    }

    /// Exponent t with ω = ζ_M^t, 0 ≤ t < M.
    pub fn omega_exponent(&self) -> u32 {
        self.omega_exp
    }

    pub fn omega_sqrt_exponent(&self) -> u32 {
        self.omega_sqrt_exp
    }

    /// Exponent of ζ_M giving q^p.
    pub fn q_exponent(&self, p: i64) -> i64 {
        self.q_exp as i64 * p.rem_euclid(self.dim as i64)
    }

    /// Exponent of ζ_M giving ζ^p.
    pub fn zeta_exponent(&self, p: i64) -> i64 {
        (self.zeta_exp as i64 * p.rem_euclid(2 * self.dim as i64)).rem_euclid(self.modulus() as i64)
    }

    pub fn q_pow(&self, p: i64) -> Cyclo {
        self.root(self.q_exponent(p))
    }

    pub fn zeta_pow(&self, p: i64) -> Cyclo {
        self.root(self.zeta_exponent(p))
    }

    /// ω^{p/2} on the principal branch.
    pub fn omega_half_pow(&self, p: i64) -> Cyclo {
        self.root(self.omega_sqrt_exp as i64 * p)
    }

    /// 1/√N = √N / N.
    pub fn inv_sqrt_n(&self) -> Cyclo {
        self.sqrt_n.scale(&BigRational::new(1.into(), (self.dim as i64).into()))
    }

    /// N^{-k/2} for k ≥ 0.
    pub fn inv_sqrt_n_pow(&self, k: u32) -> Cyclo {
        let half = BigRational::new(1.into(), num_bigint::BigInt::from(self.dim).pow(k / 2));
        let base = if k % 2 == 1 { self.inv_sqrt_n() } else { self.one() };
        base.scale(&half)
    }

    pub fn root(&self, k: i64) -> Cyclo {
        Cyclo::root(&self.field, k)
    }

    pub fn zero(&self) -> Cyclo {
        Cyclo::zero(&self.field)
    }

    pub fn one(&self) -> Cyclo {
        Cyclo::one(&self.field)
    }

    pub fn int(&self, v: i64) -> Cyclo {
        Cyclo::from_int(&self.field, v)
    }

    pub fn rational(&self, v: BigRational) -> Cyclo {
        Cyclo::from_rational(&self.field, v)
    }

    /// Equality under the chosen backend.
    pub fn scalar_eq(&self, x: &Cyclo, y: &Cyclo, backend: Backend) -> bool {
        match backend {
            Backend::Exact => cyclo_eq(x, y),
            Backend::Float => (x.embed() - y.embed()).norm() < FLOAT_TOLERANCE,
        }
    }

    pub fn is_zero_with(&self, x: &Cyclo, backend: Backend) -> bool {
        match backend {
            Backend::Exact => x.is_zero(),
            Backend::Float => x.embed().norm() < FLOAT_TOLERANCE,
        }
    }

    /// Human-readable scalar: recognises `r · √N^e · ω^{f/2} · ζ^g · q^j` shapes and
    /// falls back to the power-basis form.
    pub fn format_scalar(&self, x: &Cyclo) -> String {
        if x.is_zero() {
            return "0".into();
        }
        for e in [0i64, -1, 1] {
            for f in [0i64, 1, -1, 2, -2, 3, -3] {
                for g in [0i64, 1] {
                    let mut y = x.mul_root(-(self.omega_sqrt_exp as i64) * f - self.zeta_exponent(g));
                    if e == 1 {
                        y = (&y * &self.sqrt_n).scale(&BigRational::new(1.into(), (self.dim as i64).into()));
                    } else if e == -1 {
                        y = &y * &self.sqrt_n;
                    }
                    for j in 0..self.dim as i64 {
                        let z = y.mul_root(-self.q_exponent(j));
                        if let Some(r) = z.as_rational() {
                            return render_shape(&r, e, f, g, j);
                        }
                    }
                }
            }
        }
        format!("({x})")
    }
}

fn render_shape(r: &BigRational, e: i64, f: i64, g: i64, j: i64) -> String {
    use num_traits::One;
    let mut parts: Vec<String> = Vec::new();
    let neg = r < &BigRational::zero();
    let abs = if neg { -r.clone() } else { r.clone() };
    if !abs.is_one() {
        parts.push(format!("{abs}"));
    }
    match e {
        1 => parts.push("sqrtN".into()),
        -1 => parts.push("sqrtN^-1".into()),
        _ => {}
    }
    match f {
        0 => {}
        1 => parts.push("omegaSqrt".into()),
        _ => parts.push(format!("omegaSqrt^{f}")),
    }
    if g == 1 {
        parts.push("zeta".into());
    }
    match j {
        0 => {}
        1 => parts.push("q".into()),
        _ => parts.push(format!("q^{j}")),
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    let body = parts.join("*");
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Exact equality: x − y reduces to zero modulo Φ_M.
pub fn cyclo_eq(x: &Cyclo, y: &Cyclo) -> bool {
    x.modulus() == y.modulus() && (x - y).is_zero()
}
