//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! Ranges are given as a list of break points; the last one may be `+∞`.
//! Outer segments can be remapped (see [`EndpointMap`]) so that square-root
//! endpoint behaviour and exponential tails become smooth before bisection.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::constants::{EndpointMap, QuadratureSpec};
use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
enum Segment {
    Plain,
    /// x = a + t²
    Sqrt { a: f64 },
    /// x = a + t/(1 − t)
    Rational { a: f64 },
    /// x = a − ln(1 − t)
    Exp { a: f64 },
}

impl Segment {
    #[inline]
    fn eval<F: Fn(f64) -> f64>(&self, f: &F, t: f64) -> f64 {
        match *self {
            Segment::Plain => f(t),
            Segment::Sqrt { a } => 2.0 * t * f(a + t * t),
            Segment::Rational { a } => {
                let u = 1.0 - t;
                if u <= 0.0 {
                    return 0.0;
                }
                f(a + t / u) / (u * u)
            }
            Segment::Exp { a } => {
                let u = 1.0 - t;
                if u <= 0.0 {
                    return 0.0;
                }
                f(a - u.ln()) / u
            }
        }
    }
}

struct Piece {
    seg: Segment,
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> (f64, f64) {
    let mut e = err.abs();
    if res_asc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / res_asc).powf(1.5);
        e = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    (e.max(floor), floor)
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, seg: Segment, lo: f64, hi: f64) -> Piece {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = seg.eval(f, c);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = seg.eval(f, c - x);
        let f2 = seg.eval(f, c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let (error, floor) = rescale_error((res_k - res_g) * h, res_abs * h.abs(), res_asc * h.abs());
    Piece {
        seg,
        lo,
        hi,
        value: res_k * h,
        error,
        floor,
    }
}

fn segments(points: &[f64], map: EndpointMap) -> Result<Vec<(Segment, f64, f64)>> {
    if points.len() < 2 {
        return Err(Error::domain("integration range needs at least two points"));
    }
    let last = points.len() - 2;
    let mut out = Vec::with_capacity(points.len() - 1);
    for (i, w) in points.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if !a.is_finite() || !(b > a) {
            return Err(Error::domain(format!("bad integration segment [{a}, {b}]")));
        }
        let piece = if b == f64::INFINITY {
            if i != last {
                return Err(Error::domain("only the last break point may be infinite"));
            }
            if map == EndpointMap::ExpUpper {
                (Segment::Exp { a }, 0.0, 1.0)
            } else {
                (Segment::Rational { a }, 0.0, 1.0)
            }
        } else if i == 0 && map == EndpointMap::SqrtLower {
            (Segment::Sqrt { a }, 0.0, (b - a).sqrt())
        } else {
            (Segment::Plain, a, b)
        };
        out.push(piece);
    }
    Ok(out)
}

/// ∫ f over the union of `[points[i], points[i+1]]`.
pub fn integrate_points<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut heap: BinaryHeap<Piece> = segments(points, spec.singular_endpoint_map)?
        .into_iter()
        .map(|(seg, lo, hi)| kronrod(&f, seg, lo, hi))
        .collect();
    let mut subdivisions = heap.len();
    loop {
        let (value, error, floor) = heap
            .iter()
            .fold((0.0, 0.0, 0.0), |(v, e, r), p| (v + p.value, e + p.error, r + p.floor));
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::NoConvergence {
                value,
                error,
                subdivisions,
            });
        }
        let tol = spec.abs_tol.max(spec.rel_tol * value.abs());
        if error <= tol || error <= 2.0 * floor {
            return Ok(Estimate {
                value,
                error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let unsplittable = mid <= worst.lo || mid >= worst.hi;
        if subdivisions >= spec.max_subdivisions || unsplittable {
            return Err(Error::NoConvergence {
                value,
                error,
                subdivisions,
            });
        }
        heap.push(kronrod(&f, worst.seg, worst.lo, mid));
        heap.push(kronrod(&f, worst.seg, mid, worst.hi));
        subdivisions += 1;
    }
}

/// ∫ₐᵇ f, with `b` possibly `+∞`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    integrate_points(f, &[a, b], spec)
}
