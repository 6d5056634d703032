//! The counting formulas used by the reproduction pipelines.

use crate::oracles::TupleKind;

/// Pairs of evil numbers summing to n, x < y.
pub const R2A: &str = "n=x+y & x<y & T[x]=@0 & T[y]=@0";
/// Pairs of odious numbers summing to n, x < y.
pub const R2B: &str = "n=x+y & x<y & T[x]=@1 & T[y]=@1";
/// Pairs x ≤ y with x + y = n + 1 and twisted Thue–Morse value 0.
pub const R3C_SHIFTED: &str = "n+1=x+y & x<=y & TT[x]=@0 & TT[y]=@0";
pub const R3D_SHIFTED: &str = "n+1=x+y & x<=y & TT[x]=@1 & TT[y]=@1";
pub const R3C: &str = "n=x+y & x<=y & TT[x]=@0 & TT[y]=@0";
pub const R3D: &str = "n=x+y & x<=y & TT[x]=@1 & TT[y]=@1";

const TUPLE_VARS: [&str; 10] = ["i", "j", "k", "l", "m", "o", "p", "q", "r", "s"];

/// Ordered j-tuples with n + shift as their sum and all Thue–Morse values
/// 0 (`R`) or 1 (`S`). Supports j ≤ 10.
pub fn tuple_formula(j: usize, kind: TupleKind, shift: u64) -> String {
    assert!((1..=TUPLE_VARS.len()).contains(&j), "tuple length out of range");
    let vars = &TUPLE_VARS[..j];
    let bit = match kind {
        TupleKind::R => 0,
        TupleKind::S => 1,
    };
    let lhs = if shift == 0 { "n".to_string() } else { format!("n+{shift}") };
    let mut out = format!("{lhs}={}", vars.join("+"));
    for v in vars {
        out.push_str(&format!(" & T[{v}]=@{bit}"));
    }
    out
}
