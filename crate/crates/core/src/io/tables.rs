//! Plain-text tables for sampled results.

use std::fmt::Write as _;

use crate::operators::So3Signal;
use crate::sht::GridSignal;

/// One `alpha beta gamma re im` row per SO(3) sample, γ fastest.
pub fn write_so3_table(s: &So3Signal) -> String {
    let mut out = String::from("# alpha beta gamma re im\n");
    for (a, b, g, v) in s.iter() {
        writeln!(out, "{a:.16e} {b:.16e} {g:.16e} {:.16e} {:.16e}", v.re, v.im).unwrap();
    }
    out
}

/// One `theta phi re im` row per grid sample, longitude fastest.
pub fn write_grid_table(s: &GridSignal) -> String {
    let mut out = String::from("# theta phi re im\n");
    for (j, k, p) in s.grid().points() {
        let v = s.get(j, k);
        writeln!(out, "{:.16e} {:.16e} {:.16e} {:.16e}", p.theta(), p.phi(), v.re, v.im).unwrap();
    }
    out
}
