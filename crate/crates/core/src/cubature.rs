//! Frolov cubature with the Chebyshev-Frolov lattice, deterministic and
//! randomized.
//!
//! For a scale `N > 0` the generator is shrunk to `s A_n` with
//! `s = (|det A_n| N)^{-1/d}`, so every node carries the weight `1/N`. The
//! nodes are `s x` for the lattice points `x = A_n k` inside
//! `[-1/(2s), 1/(2s)]^d`. With a random dilation `u` and shift `v`, the nodes
//! are `s (x + A_n v) / u` for `x` in `[-u/(2s) - A_n v, u/(2s) - A_n v]`.

use alloc::vec;
use alloc::vec::Vec;
use core::convert::Infallible;

use crate::matrix::det_magnitude;
use crate::stream::{enumerate_stream_with, StreamError, StreamOptions};
use crate::{fmath, AxisBox, DiagLadder, Error, Level, RandomShift};

/// Slack allowed when checking that a mapped node lies in the unit cube.
pub const NODE_TOLERANCE: f64 = 1e-9;

/// Level, scale `N`, and the derived shrink factor and weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubatureSpec {
    level: Level,
    scale: f64,
    shrink: f64,
    weight: f64,
}

impl CubatureSpec {
    pub fn new(level: Level, scale: f64) -> Result<Self, Error> {
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidScale(scale));
        }
        let d = level.dim() as f64;
        let shrink = fmath::pow(det_magnitude(level) * scale, -1.0 / d);
        Ok(CubatureSpec {
            level,
            scale,
            shrink,
            weight: 1.0 / scale,
        })
    }

    /// `N = 2^m`.
    pub fn from_log2(level: Level, log2_scale: i32) -> Result<Self, Error> {
        Self::new(level, fmath::pow(2.0, log2_scale as f64))
    }

    #[inline]
    pub fn level(&self) -> Level {
        self.level
    }

    #[inline]
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `s(N) = (|det A_n| N)^{-1/d}`.
    #[inline]
    pub fn shrink(&self) -> f64 {
        self.shrink
    }

    /// Node weight `|det(s A_n)| = 1/N`.
    #[inline]
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Half-width of [`Self::standard_box`], `1 / (2 s)`.
    pub fn half_width(&self) -> f64 {
        (1.0 / self.shrink) * 0.5
    }

    /// `[-1/(2s), 1/(2s)]^d`; its lattice points map onto the nodes by `x -> s x`.
    pub fn standard_box(&self) -> AxisBox {
        let h = self.half_width();
        AxisBox::symmetric(self.level.dim(), h).expect("half-width is finite")
    }

    /// Box for the randomized rule, together with `A_n v`.
    ///
    /// `A_n v` is formed by the same butterfly merges the enumerator uses.
    pub fn randomized_box(
        &self,
        shift: &RandomShift,
        ladder: &DiagLadder,
    ) -> Result<(AxisBox, Vec<f64>), Error> {
        let d = self.level.dim();
        if shift.dim() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                found: shift.dim(),
            });
        }
        if ladder.level() != self.level {
            return Err(Error::LengthMismatch {
                expected: d,
                found: ladder.dim(),
            });
        }
        let mut av = shift.v().to_vec();
        ladder.apply_generator(&mut av);
        let inv = 1.0 / self.shrink;
        let mut lower = vec![0.0; d];
        let mut upper = vec![0.0; d];
        for i in 0..d {
            let h = inv * shift.u()[i] * 0.5;
            lower[i] = -h - av[i];
            upper[i] = h - av[i];
        }
        Ok((AxisBox::new(lower, upper)?, av))
    }

    /// `s U^{-1} (x + A_n v)`, checked to lie in `[-1/2, 1/2]^d` up to
    /// [`NODE_TOLERANCE`].
    pub fn map_to_unit(
        &self,
        x: &[f64],
        shift: &RandomShift,
        shift_vector: &[f64],
    ) -> Result<Vec<f64>, Error> {
        let mut node = vec![0.0; x.len()];
        self.map_into(x, shift.u(), shift_vector, &mut node)?;
        Ok(node)
    }

    fn map_into(&self, x: &[f64], u: &[f64], av: &[f64], node: &mut [f64]) -> Result<(), Error> {
        let d = self.level.dim();
        for found in [x.len(), u.len(), av.len()] {
            if found != d {
                return Err(Error::LengthMismatch { expected: d, found });
            }
        }
        for i in 0..d {
            let y = self.shrink * ((x[i] + av[i]) / u[i]);
            if fmath::abs(y) > 0.5 + NODE_TOLERANCE {
                return Err(Error::NodeOutsideCube { axis: i, value: y });
            }
            node[i] = y;
        }
        Ok(())
    }

    fn map_standard_into(&self, x: &[f64], node: &mut [f64]) -> Result<(), Error> {
        for (i, (n, &xi)) in node.iter_mut().zip(x).enumerate() {
            let y = self.shrink * xi;
            if fmath::abs(y) > 0.5 + NODE_TOLERANCE {
                return Err(Error::NodeOutsideCube { axis: i, value: y });
            }
            *n = y;
        }
        Ok(())
    }
}

/// How integrand values are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// One running `f64` sum.
    #[default]
    Naive,
    /// Neumaier's compensated sum.
    Compensated,
}

/// Cubature value and the number of nodes that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub node_count: u64,
    /// Unweighted sum of integrand values; `value = sum / N`.
    pub sum: f64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: f64,
    comp: f64,
    mode: Summation,
}

impl Accumulator {
    fn new(mode: Summation) -> Self {
        Accumulator {
            sum: 0.0,
            comp: 0.0,
            mode,
        }
    }

    #[inline]
    fn add(&mut self, v: f64) {
        match self.mode {
            Summation::Naive => self.sum += v,
            Summation::Compensated => {
                let t = self.sum + v;
                if fmath::abs(self.sum) >= fmath::abs(v) {
                    self.comp += (self.sum - t) + v;
                } else {
                    self.comp += (v - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Integrates `f` over `[-1/2, 1/2]^d`. With `shift = None` this is the
/// deterministic rule; otherwise the randomized one. Nodes are streamed and
/// never stored.
pub fn integrate<F>(
    spec: &CubatureSpec,
    ladder: &DiagLadder,
    shift: Option<&RandomShift>,
    mut f: F,
) -> Result<Estimate, Error>
where
    F: FnMut(&[f64]) -> f64,
{
    try_integrate(
        spec,
        ladder,
        shift,
        Summation::Naive,
        &StreamOptions::default(),
        |x| Ok::<f64, Infallible>(f(x)),
    )
    .map_err(StreamError::into_domain)
}

/// Fallible-integrand form of [`integrate`] with explicit summation and
/// traversal options. An integrand error aborts the traversal.
pub fn try_integrate<E, F>(
    spec: &CubatureSpec,
    ladder: &DiagLadder,
    shift: Option<&RandomShift>,
    summation: Summation,
    options: &StreamOptions,
    mut f: F,
) -> Result<Estimate, StreamError<E>>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
{
    let d = spec.level.dim();
    let mut node = vec![0.0; d];
    let mut acc = Accumulator::new(summation);

    // Node mapping errors travel through the consumer channel as `Err(Ok(e))`.
    let result = match shift {
        None => {
            let region = spec.standard_box();
            enumerate_stream_with(ladder, &region, options, |p| {
                spec.map_standard_into(p.x, &mut node).map_err(Ok)?;
                acc.add(f(&node).map_err(Err)?);
                Ok(())
            })
        }
        Some(shift) => {
            let (region, av) = spec.randomized_box(shift, ladder)?;
            enumerate_stream_with(ladder, &region, options, |p| {
                spec.map_into(p.x, shift.u(), &av, &mut node).map_err(Ok)?;
                acc.add(f(&node).map_err(Err)?);
                Ok(())
            })
        }
    };
    let node_count = match result {
        Ok(c) => c,
        Err(StreamError::Domain(e)) | Err(StreamError::Consumer(Ok(e))) => {
            return Err(StreamError::Domain(e))
        }
        Err(StreamError::Consumer(Err(e))) => return Err(StreamError::Consumer(e)),
    };
    let sum = acc.total();
    Ok(Estimate {
        value: spec.weight * sum,
        node_count,
        sum,
    })
}
