//! Summary statistics for experiment output.

use num_traits::Float;

fn from_usize<F: Float>(n: usize) -> F {
    F::from(n).expect("count fits the float type")
}

pub fn mean<F: Float>(xs: &[F]) -> Option<F> {
    if xs.is_empty() {
        return None;
    }
    let sum = xs.iter().fold(F::zero(), |acc, &x| acc + x);
    Some(sum / from_usize(xs.len()))
}

/// Population variance.
pub fn variance<F: Float>(xs: &[F]) -> Option<F> {
    let m = mean(xs)?;
    let ss = xs.iter().fold(F::zero(), |acc, &x| acc + (x - m) * (x - m));
    Some(ss / from_usize(xs.len()))
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Correlation<F: Float = f64> {
    pub r: F,
    /// One of the inputs had zero variance; `r` is then reported as 0.
    pub degenerate: bool,
}

/// Pearson correlation of paired samples. `None` for fewer than two pairs
/// or mismatched lengths.
pub fn pearson<F: Float>(xs: &[F], ys: &[F]) -> Option<Correlation<F>> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(xs)?, mean(ys)?);
    let mut sxy = F::zero();
    let mut sxx = F::zero();
    let mut syy = F::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy = sxy + dx * dy;
        sxx = sxx + dx * dx;
        syy = syy + dy * dy;
    }
    if sxx == F::zero() || syy == F::zero() {
        return Some(Correlation {
            r: F::zero(),
            degenerate: true,
        });
    }
    Some(Correlation {
        r: sxy / (sxx * syy).sqrt(),
        degenerate: false,
    })
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Summary<F: Float = f64> {
    pub count: usize,
    pub mean: F,
    pub min: F,
    pub max: F,
}

impl<F: Float> Summary<F> {
    pub fn of(xs: &[F]) -> Option<Self> {
        let mean = mean(xs)?;
        let min = xs.iter().copied().fold(F::infinity(), F::min);
        let max = xs.iter().copied().fold(F::neg_infinity(), F::max);
        Some(Summary {
            count: xs.len(),
            mean,
            min,
            max,
        })
    }
}

/// Fraction of `true` values.
pub fn fraction<F: Float>(flags: &[bool]) -> Option<F> {
    if flags.is_empty() {
        return None;
    }
    Some(from_usize::<F>(flags.iter().filter(|&&b| b).count()) / from_usize(flags.len()))
}
