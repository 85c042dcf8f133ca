use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{int, text_vec};
use super::{IntervalError, Rational, RationalInterval};

/// Default limit on merged breakpoints produced by composition.
pub const DEFAULT_BREAKPOINT_CAP: usize = 100_000;

/// A continuous piecewise-linear function through `(xs[i], ys[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBoundary", into = "RawBoundary")]
pub struct PwlBoundary {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawBoundary {
    #[serde(with = "text_vec")]
    x: Vec<Rational>,
    #[serde(with = "text_vec")]
    y: Vec<Rational>,
}

impl TryFrom<RawBoundary> for PwlBoundary {
    type Error = IntervalError;

    fn try_from(raw: RawBoundary) -> Result<Self, IntervalError> {
        PwlBoundary::new(raw.x, raw.y)
    }
}

impl From<PwlBoundary> for RawBoundary {
    fn from(b: PwlBoundary) -> Self {
        RawBoundary { x: b.xs, y: b.ys }
    }
}

impl PwlBoundary {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, IntervalError> {
        if xs.len() != ys.len() {
            return Err(IntervalError::InvalidBoundary(format!(
                "{} breakpoints but {} values",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(IntervalError::InvalidBoundary(
                "at least two breakpoints are required".into(),
            ));
        }
        if let Some(w) = xs.windows(2).find(|w| w[0] >= w[1]) {
            return Err(IntervalError::InvalidBoundary(format!(
                "breakpoints must increase strictly ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Self { xs, ys })
    }

    /// Builds a boundary from `(x, y)` pairs.
    pub fn from_points(points: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, IntervalError> {
        let (xs, ys) = points.into_iter().unzip();
        Self::new(xs, ys)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.xs
    }

    pub fn values(&self) -> &[Rational] {
        &self.ys
    }

    pub fn start(&self) -> &Rational {
        &self.xs[0]
    }

    pub fn end(&self) -> &Rational {
        self.xs.last().expect("two or more breakpoints")
    }

    /// Value at `x`; `x` must lie within `[start, end]`.
    pub fn eval(&self, x: &Rational) -> Rational {
        eval_on(&self.xs, &self.ys, x)
    }
}

pub(crate) fn eval_on(xs: &[Rational], ys: &[Rational], x: &Rational) -> Rational {
    let idx = xs.partition_point(|p| p <= x);
    if idx == 0 {
        return ys[0].clone();
    }
    if idx == xs.len() {
        return ys[idx - 1].clone();
    }
    lerp(&xs[idx - 1], &xs[idx], &ys[idx - 1], &ys[idx], x)
}

fn lerp(x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational, x: &Rational) -> Rational {
    if x == x0 {
        return y0.clone();
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// The `x` in the open interval `(x0, x1)` where the line through
/// `(x0, y0)`, `(x1, y1)` takes the value `level`, if any.
fn level_crossing(x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational, level: &Rational) -> Option<Rational> {
    if y0 == y1 {
        return None;
    }
    let x = x0 + (level - y0) * (x1 - x0) / (y1 - y0);
    (x0 < &x && &x < x1).then_some(x)
}

/// Where two lines over `[s, t]`, given by their endpoint values, cross
/// strictly inside the interval.
fn line_crossing(s: &Rational, t: &Rational, a: (&Rational, &Rational), b: (&Rational, &Rational)) -> Option<Rational> {
    let ds = a.0 - b.0;
    let dt = a.1 - b.1;
    if ds.is_zero() || dt.is_zero() || ds.is_positive() == dt.is_positive() {
        return None;
    }
    Some(s + (t - s) * &ds / (&ds - &dt))
}

/// A set-valued map `x ↦ [l(x), u(x)]` on a compact interval `[a, b]`.
///
/// Both boundaries are continuous and piecewise linear, share one breakpoint
/// grid, satisfy `a <= l <= u <= b`, and so define an upper semicontinuous
/// map with nonempty compact interval fibers. Collinear interior breakpoints
/// are dropped on construction, so equal maps compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMultimap", into = "RawMultimap")]
pub struct PwlMultimap {
    domain: RationalInterval,
    xs: Vec<Rational>,
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RawMultimap {
    domain: RationalInterval,
    lower: PwlBoundary,
    upper: PwlBoundary,
}

impl TryFrom<RawMultimap> for PwlMultimap {
    type Error = IntervalError;

    fn try_from(raw: RawMultimap) -> Result<Self, IntervalError> {
        PwlMultimap::new(raw.domain, raw.lower, raw.upper)
    }
}

impl From<PwlMultimap> for RawMultimap {
    fn from(map: PwlMultimap) -> Self {
        RawMultimap {
            domain: map.domain.clone(),
            lower: map.lower(),
            upper: map.upper(),
        }
    }
}

impl PwlMultimap {
    pub fn new(domain: RationalInterval, lower: PwlBoundary, upper: PwlBoundary) -> Result<Self, IntervalError> {
        if domain.is_degenerate() {
            return Err(IntervalError::DegenerateDomain);
        }
        for (name, b) in [("lower", &lower), ("upper", &upper)] {
            if b.start() != domain.lo() || b.end() != domain.hi() {
                return Err(IntervalError::InvalidBoundary(format!(
                    "{name} boundary spans [{}, {}] but the domain is {domain}",
                    b.start(),
                    b.end()
                )));
            }
        }
        let mut xs: Vec<Rational> = lower.xs.iter().chain(&upper.xs).cloned().collect();
        xs.sort();
        xs.dedup();
        let lo: Vec<Rational> = xs.iter().map(|x| lower.eval(x)).collect();
        let hi: Vec<Rational> = xs.iter().map(|x| upper.eval(x)).collect();
        Self::from_grid(domain, xs, lo, hi)
    }

    /// Validates values on a common grid whose ends are the domain ends.
    fn from_grid(
        domain: RationalInterval,
        xs: Vec<Rational>,
        lower: Vec<Rational>,
        upper: Vec<Rational>,
    ) -> Result<Self, IntervalError> {
        for ((x, l), u) in xs.iter().zip(&lower).zip(&upper) {
            if l > u {
                return Err(IntervalError::FiberOrder {
                    x: x.to_string(),
                    lower: l.to_string(),
                    upper: u.to_string(),
                });
            }
            if !domain.contains(l) || !domain.contains(u) {
                return Err(IntervalError::ValueOutOfRange {
                    x: x.to_string(),
                    domain: domain.to_string(),
                });
            }
        }
        let mut map = Self {
            domain,
            xs,
            lower,
            upper,
        };
        map.drop_collinear();
        Ok(map)
    }

    /// `l = u = boundary`, a single-valued map.
    pub fn singleton(domain: RationalInterval, boundary: PwlBoundary) -> Result<Self, IntervalError> {
        Self::new(domain, boundary.clone(), boundary)
    }

    pub fn identity(domain: RationalInterval) -> Self {
        let ends = vec![domain.lo().clone(), domain.hi().clone()];
        let boundary = PwlBoundary::new(ends.clone(), ends).expect("nondegenerate domain");
        Self::singleton(domain, boundary).expect("identity stays in the domain")
    }

    /// Every point maps to the same `fiber`.
    pub fn constant(domain: RationalInterval, fiber: &RationalInterval) -> Result<Self, IntervalError> {
        let xs = vec![domain.lo().clone(), domain.hi().clone()];
        let lower = PwlBoundary::new(xs.clone(), vec![fiber.lo().clone(); 2])?;
        let upper = PwlBoundary::new(xs, vec![fiber.hi().clone(); 2])?;
        Self::new(domain, lower, upper)
    }

    pub fn domain(&self) -> &RationalInterval {
        &self.domain
    }

    /// The merged breakpoint grid.
    pub fn breakpoints(&self) -> &[Rational] {
        &self.xs
    }

    pub fn lower_values(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper_values(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> PwlBoundary {
        PwlBoundary {
            xs: self.xs.clone(),
            ys: self.lower.clone(),
        }
    }

    pub fn upper(&self) -> PwlBoundary {
        PwlBoundary {
            xs: self.xs.clone(),
            ys: self.upper.clone(),
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.lower == self.upper
    }

    pub fn lower_at(&self, x: &Rational) -> Rational {
        eval_on(&self.xs, &self.lower, x)
    }

    pub fn upper_at(&self, x: &Rational) -> Rational {
        eval_on(&self.xs, &self.upper, x)
    }

    /// `F(x) = [l(x), u(x)]`.
    pub fn fiber(&self, x: &Rational) -> Result<RationalInterval, IntervalError> {
        self.check_point(x)?;
        Ok(RationalInterval::new(self.lower_at(x), self.upper_at(x)).expect("l <= u"))
    }

    pub(crate) fn check_point(&self, x: &Rational) -> Result<(), IntervalError> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(IntervalError::OutsideDomain {
                what: x.to_string(),
                domain: self.domain.to_string(),
            })
        }
    }

    pub(crate) fn check_interval(&self, j: &RationalInterval) -> Result<(), IntervalError> {
        if self.domain.contains_interval(j) {
            Ok(())
        } else {
            Err(IntervalError::OutsideDomain {
                what: j.to_string(),
                domain: self.domain.to_string(),
            })
        }
    }

    /// `(min l, max u)` over `[p, q] ⊆ domain`. Piecewise-linear extrema sit
    /// at the ends or at breakpoints in between.
    pub(crate) fn extrema(&self, p: &Rational, q: &Rational) -> (Rational, Rational) {
        let mut lo = self.lower_at(p).min(self.lower_at(q));
        let mut hi = self.upper_at(p).max(self.upper_at(q));
        let start = self.xs.partition_point(|x| x <= p);
        for i in start..self.xs.len() {
            if &self.xs[i] >= q {
                break;
            }
            if self.lower[i] < lo {
                lo = self.lower[i].clone();
            }
            if self.upper[i] > hi {
                hi = self.upper[i].clone();
            }
        }
        (lo, hi)
    }

    fn drop_collinear(&mut self) {
        let n = self.xs.len();
        if n <= 2 {
            return;
        }
        let collinear = |ys: &[Rational], xs: &[Rational], a: usize, b: usize, c: usize| {
            (&ys[b] - &ys[a]) * (&xs[c] - &xs[b]) == (&ys[c] - &ys[b]) * (&xs[b] - &xs[a])
        };
        let mut keep = vec![0usize];
        for i in 1..n - 1 {
            let a = *keep.last().expect("first point kept");
            let drop = collinear(&self.lower, &self.xs, a, i, i + 1) && collinear(&self.upper, &self.xs, a, i, i + 1);
            if !drop {
                keep.push(i);
            }
        }
        keep.push(n - 1);
        if keep.len() == n {
            return;
        }
        let pick = |v: &[Rational]| keep.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        self.xs = pick(&self.xs);
        self.lower = pick(&self.lower);
        self.upper = pick(&self.upper);
    }
}

/// `x ↦ f(g(x))`, with the default breakpoint cap.
pub fn compose(f: &PwlMultimap, g: &PwlMultimap) -> Result<PwlMultimap, IntervalError> {
    compose_capped(f, g, DEFAULT_BREAKPOINT_CAP)
}

/// `x ↦ f(g(x)) = [min l_f, max u_f]` over the fiber `[l_g(x), u_g(x)]`.
///
/// The result is piecewise linear with breakpoints among: the breakpoints of
/// `g`, the points where a fiber end of `g` crosses a breakpoint of `f`, and
/// the crossings of the competing extremum candidates between those. The
/// boundaries are evaluated exactly at every candidate point.
pub fn compose_capped(f: &PwlMultimap, g: &PwlMultimap, cap: usize) -> Result<PwlMultimap, IntervalError> {
    if f.domain != g.domain {
        return Err(IntervalError::DomainMismatch {
            outer: f.domain.to_string(),
            inner: g.domain.to_string(),
        });
    }
    let two = int(2);
    let mut xs: Vec<Rational> = Vec::with_capacity(g.xs.len());
    for j in 0..g.xs.len() - 1 {
        let (x0, x1) = (&g.xs[j], &g.xs[j + 1]);
        let alpha = |x: &Rational| lerp(x0, x1, &g.lower[j], &g.lower[j + 1], x);
        let beta = |x: &Rational| lerp(x0, x1, &g.upper[j], &g.upper[j + 1], x);

        let mut cuts = vec![x0.clone(), x1.clone()];
        for p in &f.xs {
            cuts.extend(level_crossing(x0, x1, &g.lower[j], &g.lower[j + 1], p));
            cuts.extend(level_crossing(x0, x1, &g.upper[j], &g.upper[j + 1], p));
        }
        cuts.sort();
        cuts.dedup();

        for w in cuts.windows(2) {
            let (s, t) = (&w[0], &w[1]);
            xs.push(s.clone());
            let (as_, at) = (alpha(s), alpha(t));
            let (bs, bt) = (beta(s), beta(t));
            let mid = (s + t) / &two;
            let (am, bm) = (alpha(&mid), beta(&mid));
            // f-breakpoints strictly inside the fiber for the whole open piece.
            let inner = f.xs.iter().enumerate().filter(|(_, p)| &&am < p && p < &&bm);
            let (mut inner_min, mut inner_max): (Option<&Rational>, Option<&Rational>) = (None, None);
            for (i, _) in inner {
                inner_min = Some(inner_min.map_or(&f.lower[i], |m| m.min(&f.lower[i])));
                inner_max = Some(inner_max.map_or(&f.upper[i], |m| m.max(&f.upper[i])));
            }
            let lower_lines = [
                Some((f.lower_at(&as_), f.lower_at(&at))),
                Some((f.lower_at(&bs), f.lower_at(&bt))),
                inner_min.map(|c| (c.clone(), c.clone())),
            ];
            let upper_lines = [
                Some((f.upper_at(&as_), f.upper_at(&at))),
                Some((f.upper_at(&bs), f.upper_at(&bt))),
                inner_max.map(|c| (c.clone(), c.clone())),
            ];
            for lines in [&lower_lines, &upper_lines] {
                let lines: Vec<_> = lines.iter().flatten().collect();
                for a in 0..lines.len() {
                    for b in a + 1..lines.len() {
                        xs.extend(line_crossing(
                            s,
                            t,
                            (&lines[a].0, &lines[a].1),
                            (&lines[b].0, &lines[b].1),
                        ));
                    }
                }
            }
            if xs.len() > cap {
                return Err(IntervalError::BreakpointCap { cap });
            }
        }
    }
    xs.push(g.domain.hi().clone());
    xs.sort();
    xs.dedup();

    let mut lower = Vec::with_capacity(xs.len());
    let mut upper = Vec::with_capacity(xs.len());
    for x in &xs {
        let (l, u) = f.extrema(&g.lower_at(x), &g.upper_at(x));
        lower.push(l);
        upper.push(u);
    }
    PwlMultimap::from_grid(g.domain.clone(), xs, lower, upper)
}

/// `F^n`, `n >= 1`.
pub fn power(map: &PwlMultimap, n: usize, cap: usize) -> Result<PwlMultimap, IntervalError> {
    if n == 0 {
        return Err(IntervalError::ZeroCount("power"));
    }
    let mut acc = map.clone();
    for _ in 1..n {
        acc = compose_capped(map, &acc, cap)?;
    }
    Ok(acc)
}
