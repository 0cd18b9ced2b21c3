//! Plain-text dump of TSVD factors for inspection.

use std::io::Write;

use super::{TMatrix, TsvdFactors};
use crate::error::Result;
use crate::scalar::Real;

/// Writes every entry of `U`, `S` and `V` as CSV rows
/// `factor,scalar_index,row,col,re,im`, where `scalar_index` is the
/// row-major linear index into the t-scalar body.
pub fn write_tsvd_csv<T: Real, W: Write>(factors: &TsvdFactors<T>, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["factor", "scalar_index", "row", "col", "re", "im"])?;
    for (name, m) in [("U", &factors.u), ("S", &factors.s), ("V", &factors.v)] {
        write_factor(&mut w, name, m)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

fn write_factor<T: Real, W: Write>(w: &mut csv::Writer<W>, name: &str, m: &TMatrix<T>) -> Result<()> {
    let (rows, cols) = m.dims();
    for k in 0..m.slice_count() {
        for r in 0..rows {
            for c in 0..cols {
                let z = m.body().data()[(k * rows + r) * cols + c];
                w.write_record([
                    name.to_string(),
                    k.to_string(),
                    r.to_string(),
                    c.to_string(),
                    format!("{:e}", z.re.as_f64()),
                    format!("{:e}", z.im.as_f64()),
                ])?;
            }
        }
    }
    Ok(())
}
