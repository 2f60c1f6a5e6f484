use std::io::{self, Write};

use num_complex::Complex64;
use vortex_core::amplitudes::CrossSectionCurve;

pub const CURVE_HEADER: &str = "phi,method,value,f1_re,f1_im,f2_re,f2_im,f3_re,f3_im,fab_re,fab_im";

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn push_complex(line: &mut String, z: Complex64) {
    line.push(',');
    line.push_str(&format_number(z.re));
    line.push(',');
    line.push_str(&format_number(z.im));
}

/// One block of rows per curve, in the order given.
pub fn write_curves_csv<W: Write>(mut out: W, curves: &[CrossSectionCurve]) -> io::Result<()> {
    writeln!(out, "{CURVE_HEADER}")?;
    let mut line = String::new();
    for curve in curves {
        for (i, s) in curve.samples.iter().enumerate() {
            line.clear();
            line.push_str(&format_number(s.phi));
            line.push(',');
            line.push_str(curve.method.name());
            line.push(',');
            line.push_str(&format_number(s.value));
            match &curve.amplitudes {
                Some(a) => {
                    let b = &a[i];
                    push_complex(&mut line, b.f1);
                    push_complex(&mut line, b.f2);
                    push_complex(&mut line, b.f3);
                    push_complex(&mut line, b.f_ab);
                }
                None => line.push_str(",,,,,,,,"),
            }
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
    }
    out.flush()
}
