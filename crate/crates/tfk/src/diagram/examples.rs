//! Named diagrams used throughout the tests, the guide and the CLI.

use super::random::one_crossing;
use super::{DiagramError, Result, Sign, TangleDiagram};

/// The 5-crossing example whose state listing is printed in full.
pub const APPENDIX_EXAMPLE: &str =
    "{{a,b,c,d},{h,f,b,c,R,q,q},{g,f,h,c,R,q,q},{d,f,g,c,R,q,q},{a,e,f,d,L,p,q},{f,e,a,b,L,q,p}}";

/// The (2,−3)-pretzel tangle with open regions `a` (left), `b` (bottom),
/// `c` (right), `d` (top) and strands `p`, `q`.
pub const PRETZEL_2M3: &str =
    "{{a,b,c,d},{b,c,h,f,R,q,q},{h,c,g,f,R,q,q},{g,c,d,f,R,q,q},{d,a,e,f,L,q,p},{e,a,b,f,L,p,q}}";

pub fn appendix_example() -> TangleDiagram {
    APPENDIX_EXAMPLE.parse().expect("built-in diagram")
}

pub fn pretzel_2m3() -> TangleDiagram {
    PRETZEL_2M3.parse().expect("built-in diagram")
}

/// A vertical column of `|n|` half-twists in one colour, left-handed for
/// `n > 0`. Open regions `a,b,c,d` are left, bottom, right, top.
pub fn twist_column(n: i32) -> Result<TangleDiagram> {
    if n == 0 {
        return Err(DiagramError::Invalid("a twist column needs at least one crossing".into()));
    }
    let mut d = one_crossing(0, Sign::L, true);
    for _ in 1..n.unsigned_abs() {
        d = d.add_twist("d", Sign::L)?;
    }
    Ok(if n < 0 { d.mirror() } else { d })
}

/// Columns of twists placed side by side, left to right.
///
/// Strand orientations in a column are reversed where needed to glue.
pub fn pretzel_tangle(columns: &[i32]) -> Result<TangleDiagram> {
    let (first, rest) = columns
        .split_first()
        .ok_or_else(|| DiagramError::Invalid("no columns".into()))?;
    let mut d = twist_column(*first)?;
    for &n in rest {
        let c = twist_column(n)?;
        let g = d.glue(&c, 1, 3, 2).or_else(|_| d.glue(&c.reverse_all(), 1, 3, 2))?;
        d = g.rotate(1);
    }
    Ok(d)
}
