//! Compactly supported potentials: piecewise-constant steps, natural cubic
//! splines through node values, barrier composition and coupling scaling.

use crate::util::{fmt_g17, fnv1a64};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    #[error(
        "barrier [{a}, {b}] overlaps the support of the inner potential (ends at {support_hi})"
    )]
    BarrierOverlap { a: f64, b: f64, support_hi: f64 },
    #[error("barrier height must be positive, got {0}")]
    NonPositiveBarrier(f64),
    #[error("spline endpoint values must be zero for compact support")]
    NonZeroEndpoints,
    #[error("knots/breakpoints must be strictly increasing")]
    NonMonotoneKnots,
    #[error("need {expected} values for {got} breakpoints")]
    LengthMismatch { expected: usize, got: usize },
    #[error("half-line potentials must be supported in x >= 0")]
    NegativeSupport,
    #[error("potential file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    HalfLine(BoundaryCondition),
    FullLine,
}

/// Step barrier `V1 * 1_[a,b]` separating the interaction region from infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Barrier {
    pub a: f64,
    pub b: f64,
    pub height: f64,
}

/// Coupling `q`; the potential enters the operator as `q^2 V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleParams {
    q: f64,
}

impl ScaleParams {
    pub fn new(q: f64) -> Option<Self> {
        (q > 0.0 && q.is_finite()).then_some(Self { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    /// Values `c_i` on `[breaks_i, breaks_{i+1})`; `values.len() + 1 == breaks.len()`.
    PiecewiseConstant { breaks: Vec<f64>, values: Vec<f64> },
    /// Cubic `a + b s + c s^2 + d s^3` in `s = x - knots_i` on each knot interval.
    PiecewiseCubic {
        knots: Vec<f64>,
        coeffs: Vec<[f64; 4]>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    domain: Domain,
    body: Body,
    support: (f64, f64),
    bound: f64,
    barrier: Option<Barrier>,
}

/// One maximal interval on which the potential is a single constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x0: f64,
    pub x1: f64,
    pub value: f64,
}

fn strictly_increasing(xs: &[f64]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

impl PotentialSpec {
    /// The zero potential with a declared (possibly empty) support interval.
    pub fn zero(domain: Domain, support: (f64, f64)) -> Result<Self, PotentialError> {
        Self::piecewise_constant(domain, vec![support.0, support.1], vec![0.0])
    }

    pub fn piecewise_constant(
        domain: Domain,
        breaks: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self, PotentialError> {
        if breaks.len() != values.len() + 1 {
            return Err(PotentialError::LengthMismatch {
                expected: breaks.len().saturating_sub(1),
                got: values.len(),
            });
        }
        if !strictly_increasing(&breaks) {
            return Err(PotentialError::NonMonotoneKnots);
        }
        if matches!(domain, Domain::HalfLine(_)) && breaks[0] < 0.0 {
            return Err(PotentialError::NegativeSupport);
        }
        let bound = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let support = (breaks[0], *breaks.last().unwrap());
        Ok(Self {
            domain,
            body: Body::PiecewiseConstant { breaks, values },
            support,
            bound,
            barrier: None,
        })
    }

    /// Natural cubic spline through `(knots, values)`, extended by zero outside.
    ///
    /// Endpoint values must vanish so the extension is continuous; the result
    /// is C^1 at interior knots and C^0 at the support endpoints.
    pub fn spline(
        domain: Domain,
        values: Vec<f64>,
        knots: Vec<f64>,
    ) -> Result<Self, PotentialError> {
        if knots.len() != values.len() || knots.len() < 2 {
            return Err(PotentialError::LengthMismatch {
                expected: knots.len(),
                got: values.len(),
            });
        }
        if !strictly_increasing(&knots) {
            return Err(PotentialError::NonMonotoneKnots);
        }
        if values[0] != 0.0 || *values.last().unwrap() != 0.0 {
            return Err(PotentialError::NonZeroEndpoints);
        }
        if matches!(domain, Domain::HalfLine(_)) && knots[0] < 0.0 {
            return Err(PotentialError::NegativeSupport);
        }
        let coeffs = natural_spline_coefficients(&knots, &values);
        let support = (knots[0], *knots.last().unwrap());
        let mut spec = Self {
            domain,
            body: Body::PiecewiseCubic { knots, coeffs },
            support,
            bound: 0.0,
            barrier: None,
        };
        // Bound |V| <= C sampled on a fine grid; the spline can overshoot the
        // node values between knots.
        let n = 10_000;
        let mut c = 0.0f64;
        for i in 0..=n {
            let x = support.0 + (support.1 - support.0) * i as f64 / n as f64;
            c = c.max(spec.evaluate(x).abs());
        }
        spec.bound = c;
        Ok(spec)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn barrier(&self) -> Option<Barrier> {
        self.barrier
    }

    /// Closed interval outside of which the potential vanishes identically.
    pub fn support(&self) -> (f64, f64) {
        match self.barrier {
            Some(b) => (self.support.0.min(b.a), b.b),
            None => self.support,
        }
    }

    /// A finite bound `C` with `|V(x)| <= C` everywhere.
    pub fn bound(&self) -> f64 {
        match self.barrier {
            Some(b) => self.bound.max(b.height),
            None => self.bound,
        }
    }

    /// The potential without its barrier part.
    pub fn inner(&self) -> PotentialSpec {
        PotentialSpec {
            barrier: None,
            ..self.clone()
        }
    }

    /// Pointwise value; right-continuous at breakpoints, exactly zero outside
    /// the support.
    pub fn evaluate(&self, x: f64) -> f64 {
        if let Some(b) = self.barrier {
            if x >= b.a && x < b.b {
                // The inner support ends strictly left of the barrier.
                return b.height;
            }
        }
        let (lo, hi) = self.support;
        if x < lo || x >= hi {
            return 0.0;
        }
        match &self.body {
            Body::PiecewiseConstant { breaks, values } => {
                // partition_point: first break > x, minus one gives the segment.
                let i = breaks.partition_point(|&b| b <= x);
                values[i - 1]
            }
            Body::PiecewiseCubic { knots, coeffs } => {
                let i = knots.partition_point(|&t| t <= x) - 1;
                let i = i.min(coeffs.len() - 1);
                let s = x - knots[i];
                let [a, b, c, d] = coeffs[i];
                a + s * (b + s * (c + s * d))
            }
        }
    }

    /// Compose with a step barrier `V1 * 1_[a,b]` to the right of the support.
    pub fn add_barrier(&self, a: f64, b: f64, v1: f64) -> Result<Self, PotentialError> {
        if v1 <= 0.0 {
            return Err(PotentialError::NonPositiveBarrier(v1));
        }
        let (_, hi) = self.support();
        // The declared support must stop at `a`; re-barriering is not allowed.
        if hi > a || b <= a || self.barrier.is_some() {
            return Err(PotentialError::BarrierOverlap {
                a,
                b,
                support_hi: hi,
            });
        }
        let mut out = self.clone();
        out.barrier = Some(Barrier { a, b, height: v1 });
        Ok(out)
    }

    /// Multiply every value (barrier included) by `q^2`.
    pub fn scale(&self, s: ScaleParams) -> Self {
        let q2 = s.q() * s.q();
        let body = match &self.body {
            Body::PiecewiseConstant { breaks, values } => Body::PiecewiseConstant {
                breaks: breaks.clone(),
                values: values.iter().map(|v| v * q2).collect(),
            },
            Body::PiecewiseCubic { knots, coeffs } => Body::PiecewiseCubic {
                knots: knots.clone(),
                coeffs: coeffs.iter().map(|c| c.map(|v| v * q2)).collect(),
            },
        };
        Self {
            domain: self.domain,
            body,
            support: self.support,
            bound: self.bound * q2,
            barrier: self.barrier.map(|b| Barrier {
                height: b.height * q2,
                ..b
            }),
        }
    }

    /// Smoothness breakpoints (body breaks/knots plus barrier edges), sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut xs = match &self.body {
            Body::PiecewiseConstant { breaks, .. } => breaks.clone(),
            Body::PiecewiseCubic { knots, .. } => knots.clone(),
        };
        if let Some(b) = self.barrier {
            xs.push(b.a);
            xs.push(b.b);
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup();
        xs
    }

    /// Maximal constant segments covering the support hull, gaps filled with
    /// zeros. `None` when the body is a spline.
    pub fn const_segments(&self) -> Option<Vec<Segment>> {
        let Body::PiecewiseConstant { breaks, values } = &self.body else {
            return None;
        };
        let mut segs: Vec<Segment> = breaks
            .windows(2)
            .zip(values)
            .map(|(w, &v)| Segment {
                x0: w[0],
                x1: w[1],
                value: v,
            })
            .collect();
        if let Some(b) = self.barrier {
            let tail = segs.last().map_or(b.a, |s| s.x1);
            if b.a > tail {
                segs.push(Segment {
                    x0: tail,
                    x1: b.a,
                    value: 0.0,
                });
            }
            segs.push(Segment {
                x0: b.a,
                x1: b.b,
                value: b.height,
            });
        }
        Some(segs)
    }

    /// Canonical text form; identical potentials hash identically.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        s.push_str(match self.domain {
            Domain::HalfLine(BoundaryCondition::Dirichlet) => "halfline dirichlet",
            Domain::HalfLine(BoundaryCondition::Neumann) => "halfline neumann",
            Domain::FullLine => "fullline",
        });
        match &self.body {
            Body::PiecewiseConstant { breaks, values } => {
                s.push_str(" squarepot breaks=");
                s.push_str(&join_g17(breaks));
                s.push_str(" values=");
                s.push_str(&join_g17(values));
            }
            Body::PiecewiseCubic { knots, coeffs } => {
                s.push_str(" splinepot knots=");
                s.push_str(&join_g17(knots));
                s.push_str(" coeffs=");
                let flat: Vec<f64> = coeffs.iter().flatten().copied().collect();
                s.push_str(&join_g17(&flat));
            }
        }
        if let Some(b) = self.barrier {
            s.push_str(&format!(
                " barrier={},{},{}",
                fmt_g17(b.a),
                fmt_g17(b.b),
                fmt_g17(b.height)
            ));
        }
        s
    }

    pub fn hash(&self) -> String {
        format!("{:016x}", fnv1a64(self.canonical_string().as_bytes()))
    }
}

fn join_g17(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_g17(x)).collect::<Vec<_>>().join(",")
}

/// Natural cubic spline: second derivative zero at both ends.
fn natural_spline_coefficients(knots: &[f64], values: &[f64]) -> Vec<[f64; 4]> {
    let n = knots.len() - 1; // intervals
    let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
    // Tridiagonal system for interior second derivatives m_1..m_{n-1}.
    let mut m = vec![0.0; n + 1];
    if n >= 2 {
        let dim = n - 1;
        let mut diag = vec![0.0; dim];
        let mut lower = vec![0.0; dim];
        let mut upper = vec![0.0; dim];
        let mut rhs = vec![0.0; dim];
        for i in 1..n {
            let j = i - 1;
            lower[j] = h[i - 1];
            diag[j] = 2.0 * (h[i - 1] + h[i]);
            upper[j] = h[i];
            rhs[j] =
                6.0 * ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]);
        }
        // Thomas algorithm.
        for j in 1..dim {
            let w = lower[j] / diag[j - 1];
            diag[j] -= w * upper[j - 1];
            rhs[j] -= w * rhs[j - 1];
        }
        m[n - 1] = rhs[dim - 1] / diag[dim - 1];
        for j in (0..dim - 1).rev() {
            m[j + 1] = (rhs[j] - upper[j] * m[j + 2]) / diag[j];
        }
    }
    (0..n)
        .map(|i| {
            let a = values[i];
            let c = m[i] / 2.0;
            let d = (m[i + 1] - m[i]) / (6.0 * h[i]);
            let b = (values[i + 1] - values[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
            [a, b, c, d]
        })
        .collect()
}

/// Parse the plain-text potential description format shared by the CLI and
/// library loaders: `key=value` lines, `#` comments and blank lines ignored.
pub fn parse_potential_file(text: &str) -> Result<PotentialSpec, PotentialError> {
    let mut domain = String::from("fullline");
    let mut bc = String::from("dirichlet");
    let mut kind = String::new();
    let mut values: Option<Vec<f64>> = None;
    let mut breaks: Option<Vec<f64>> = None;
    let mut knots: Option<Vec<f64>> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| PotentialError::Parse {
            line: lineno + 1,
            msg,
        };
        let (key, val) = line
            .split_once('=')
            .ok_or_else(|| err("expected key=value".into()))?;
        let key = key.trim();
        let val = val.trim();
        let parse_list = |v: &str| -> Result<Vec<f64>, PotentialError> {
            v.split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<Vec<f64>, _>>()
                .map_err(|e| PotentialError::Parse {
                    line: lineno + 1,
                    msg: format!("bad number list: {e}"),
                })
        };
        match key {
            "domain" => domain = val.to_string(),
            "bc" => bc = val.to_string(),
            "kind" => kind = val.to_string(),
            "values" => values = Some(parse_list(val)?),
            "breaks" => breaks = Some(parse_list(val)?),
            "knots" => knots = Some(parse_list(val)?),
            _ => return Err(err(format!("unknown key `{key}`"))),
        }
    }

    let err0 = |msg: String| PotentialError::Parse { line: 0, msg };
    let dom = match (domain.as_str(), bc.as_str()) {
        ("fullline", _) => Domain::FullLine,
        ("halfline", "dirichlet") => Domain::HalfLine(BoundaryCondition::Dirichlet),
        ("halfline", "neumann") => Domain::HalfLine(BoundaryCondition::Neumann),
        ("halfline", other) => return Err(err0(format!("unknown bc `{other}`"))),
        (other, _) => return Err(err0(format!("unknown domain `{other}`"))),
    };
    let values = values.ok_or_else(|| err0("missing `values`".into()))?;
    match kind.as_str() {
        "squarepot" => {
            let breaks = breaks.ok_or_else(|| err0("squarepot needs `breaks`".into()))?;
            PotentialSpec::piecewise_constant(dom, breaks, values)
        }
        "splinepot" => {
            let knots = knots.ok_or_else(|| err0("splinepot needs `knots`".into()))?;
            PotentialSpec::spline(dom, values, knots)
        }
        "" => Err(err0("missing `kind`".into())),
        other => Err(err0(format!("unknown kind `{other}`"))),
    }
}
