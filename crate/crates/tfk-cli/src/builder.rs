//! `--builder name[:args]` specifications.

use anyhow::{anyhow, bail, Result};
use tfk::pecmod::*;

pub const HELP: &str = "trivial:v|h, crossing:+|-, twist:N, pretzel, figure8:upper|lower, loop:WORD, \
skein-cone:N, singular-cone:upper|lower, resolution-cone";

pub fn build(spec: &str) -> Result<PecModule> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let upper = || match arg {
        "upper" => Ok(true),
        "lower" => Ok(false),
        _ => Err(anyhow!("expected upper or lower, got {arg:?}")),
    };
    let m = match name {
        "trivial" => cftd_trivial(match arg {
            "v" | "vertical" | "" => Axis::Vertical,
            "h" | "horizontal" => Axis::Horizontal,
            _ => bail!("expected v or h, got {arg:?}"),
        }),
        "crossing" => cftd_crossing(match arg {
            "+" | "" => true,
            "-" => false,
            _ => bail!("expected + or -, got {arg:?}"),
        }),
        "twist" => cftd_twist(arg.parse()?)?,
        "pretzel" => cftd_pretzel_2m3(),
        "figure8" => cftd_figure_eight(upper()?),
        "loop" => loop_from_word(arg, None, 0, &[])?,
        "skein-cone" => {
            let (s, t, f) = skein_morphism(arg.parse()?)?;
            mapping_cone(&s, &t, &f)?
        }
        "singular-cone" => {
            let (s, t, f) = singular_morphism(upper()?);
            mapping_cone(&s, &t, &f)?
        }
        "resolution-cone" => {
            let (s, t, f) = resolution_morphism();
            mapping_cone(&s, &t, &f)?
        }
        _ => bail!("unknown builder {name:?}; known: {HELP}"),
    };
    Ok(m)
}
