//! Deterministic CSV emission.
//!
//! Every table uses a fixed header, comma separators, `.` decimals via the
//! shortest round-trip float form, and LF line endings, so identical runs
//! produce byte-identical files. Schemas per scenario kind:
//!
//! | kind            | header                                         |
//! |-----------------|------------------------------------------------|
//! | simulate        | `t,l2,hs,hdot,xs,fourier_min`                  |
//! | regress_global  | `t,l2_sq,bound,margin`                         |
//! | sweep           | `param,value,blew_up,t_escape,steps,l2_final`  |
//! | certify         | `check,n,value,slack_log2,verdict`             |

use anyhow::{Context, Result};
use std::fs;
use std::path::Path;

pub const TRAJECTORY_HEADER: &str = "t,l2,hs,hdot,xs,fourier_min";
pub const REGRESS_HEADER: &str = "t,l2_sq,bound,margin";
pub const SWEEP_HEADER: &str = "param,value,blew_up,t_escape,steps,l2_final";
pub const CERTIFY_HEADER: &str = "check,n,value,slack_log2,verdict";

/// Writes a header plus preformatted rows with LF endings.
pub fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut text = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    text.push_str(header);
    text.push('\n');
    for row in rows {
        debug_assert!(!row.contains('\n'), "rows are single lines");
        text.push_str(row);
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
