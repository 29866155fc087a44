//! Globally adaptive 21-point Gauss–Kronrod quadrature for vector-valued
//! integrands, with deterministic interval selection and reduction order.

use super::precision::{Accumulator, Precision};

// Kronrod abscissae (positive half, descending) and weights; every odd index
// is also a 10-point Gauss node.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub precision: Precision,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 2000,
            precision: Precision::Double,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub values: Vec<f64>,
    /// Estimated absolute error (maximum over components).
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    values: Vec<f64>,
    error: f64,
}

fn gk21<F: FnMut(f64, &mut [f64])>(f: &mut F, dim: usize, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kron = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    let mut buf = vec![0.0; dim];

    f(center, &mut buf);
    for d in 0..dim {
        kron[d] = WGK[10] * buf[d];
    }
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        for &pt in &[center - dx, center + dx] {
            f(pt, &mut buf);
            for d in 0..dim {
                kron[d] += w * buf[d];
                if i % 2 == 1 {
                    gauss[d] += WG[i / 2] * buf[d];
                }
            }
        }
    }
    let mut error = 0.0f64;
    for d in 0..dim {
        kron[d] *= half;
        gauss[d] *= half;
        error = error.max((kron[d] - gauss[d]).abs());
    }
    Panel {
        a,
        b,
        values: kron,
        error,
    }
}

fn totals(panels: &[Panel], dim: usize, precision: Precision) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..panels.len()).collect();
    order.sort_by(|&i, &j| panels[i].a.total_cmp(&panels[j].a));
    let mut acc = vec![Accumulator::new(precision); dim];
    let mut err = Accumulator::new(precision);
    for &i in &order {
        for d in 0..dim {
            acc[d].add(panels[i].values[d]);
        }
        err.add(panels[i].error);
    }
    (acc.iter().map(Accumulator::value).collect(), err.value())
}

/// Integrates a vector-valued function over `[a, b]`.
///
/// Convergence is declared when the summed error estimate is below
/// `max(abs_tol, rel_tol · max_d |I_d|)`.
pub fn integrate_vec<F>(mut f: F, dim: usize, a: f64, b: f64, opts: &QuadOptions) -> QuadResult
where
    F: FnMut(f64, &mut [f64]),
{
    let mut panels = vec![gk21(&mut f, dim, a, b)];
    let mut evaluations = 21;
    loop {
        let (values, error) = totals(&panels, dim, opts.precision);
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = opts.abs_tol.max(opts.rel_tol * scale);
        if error <= target || panels.len() >= opts.max_subdivisions {
            return QuadResult {
                values,
                error,
                evaluations,
                converged: error <= target,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error).then(q.a.total_cmp(&p.a)))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let Panel { a: pa, b: pb, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval cannot be split further in binary64.
            let (values, error) = totals(&panels, dim, opts.precision);
            return QuadResult {
                values,
                error,
                evaluations,
                converged: false,
            };
        }
        panels.push(gk21(&mut f, dim, pa, mid));
        panels.push(gk21(&mut f, dim, mid, pb));
        evaluations += 42;
    }
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    integrate_vec(|x, out: &mut [f64]| out[0] = f(x), 1, a, b, opts)
}

/// Integrates over `[a, ∞)` for integrands that decay: `[a, a + r0]` first,
/// then successive doublings `[R, 2R]` until a piece is below a tenth of the
/// requested tolerance.
pub fn integrate_vec_semi_infinite<F>(
    mut f: F,
    dim: usize,
    a: f64,
    r0: f64,
    opts: &QuadOptions,
) -> QuadResult
where
    F: FnMut(f64, &mut [f64]),
{
    let mut first = integrate_vec(&mut f, dim, a, a + r0, opts);
    let mut lo = a + r0;
    let mut width = r0;
    for _ in 0..40 {
        // Tail pieces are measured against the running total, not themselves.
        let scale = first.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let piece_opts = QuadOptions {
            abs_tol: opts.abs_tol.max(0.1 * opts.rel_tol * scale),
            ..*opts
        };
        let piece = integrate_vec(&mut f, dim, lo, lo + width, &piece_opts);
        first.evaluations += piece.evaluations;
        first.error += piece.error;
        first.converged &= piece.converged;
        let mut piece_norm = 0.0f64;
        for d in 0..dim {
            first.values[d] += piece.values[d];
            piece_norm = piece_norm.max(piece.values[d].abs());
        }
        let scale = first.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = opts.abs_tol.max(opts.rel_tol * scale);
        if piece_norm <= 0.1 * target {
            first.error += piece_norm;
            return first;
        }
        lo += width;
        width *= 2.0;
    }
    first.converged = false;
    first
}
