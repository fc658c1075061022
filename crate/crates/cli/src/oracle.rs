//! Built-in worth oracles for `approx`, for player counts beyond dense tables.

use anyhow::{bail, Context, Result};
use synergy_core::approx::{FnOracle, WorthOracle, ORACLE_MAX_PLAYERS};
use synergy_core::{Coalition, PlayerLabeling};

fn count(text: &str, what: &str) -> Result<usize> {
    text.parse().with_context(|| format!("{what} must be a non-negative integer, got {text:?}"))
}

/// Parses `majority:N:Q`, `unanimity-pairs:N` or `additive:N`.
///
/// - `majority:N:Q` is 1 on coalitions of at least `Q` players, else 0.
/// - `unanimity-pairs:N` counts the complete pairs `{0,1}, {2,3}, ...`.
/// - `additive:N` gives player `i` the stand-alone worth `i + 1`.
pub fn parse(desc: &str) -> Result<(Box<dyn WorthOracle>, PlayerLabeling)> {
    let parts: Vec<&str> = desc.split(':').collect();
    let n = count(parts.get(1).copied().unwrap_or(""), "player count")?;
    if !(1..=ORACLE_MAX_PLAYERS).contains(&n) {
        bail!("oracle player count must be between 1 and {ORACLE_MAX_PLAYERS}");
    }
    let oracle: Box<dyn WorthOracle> = match parts.as_slice() {
        ["majority", _, q] => {
            let quota = count(q, "quota")?;
            Box::new(FnOracle::new(n, move |c: Coalition| (c.len() >= quota) as u8 as f64)?)
        }
        ["unanimity-pairs", _] => Box::new(FnOracle::new(n, |c: Coalition| {
            let m = c.mask();
            (m & (m >> 1) & 0x5555_5555_5555_5555).count_ones() as f64
        })?),
        ["additive", _] => Box::new(FnOracle::new(n, |c: Coalition| c.players().map(|i| (i + 1) as f64).sum())?),
        _ => bail!("unknown oracle {desc:?}; expected majority:N:Q, unanimity-pairs:N or additive:N"),
    };
    Ok((oracle, PlayerLabeling::default_for(n)))
}
