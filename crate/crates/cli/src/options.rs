use anyhow::{bail, Context, Result};
use repcolor::Caps;

/// Parses `key=value` pairs separated by commas on top of the defaults.
pub fn parse_caps(text: &str) -> Result<Caps> {
    let mut caps = Caps::default();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .with_context(|| format!("cap `{item}` is not key=value"))?;
        let value: usize = value
            .trim()
            .parse()
            .with_context(|| format!("cap `{item}` has a non-integer value"))?;
        let slot = match key.trim() {
            "odd" => &mut caps.odd_set,
            "internal" => &mut caps.internal,
            "cf" => &mut caps.clique_family,
            "hull" => &mut caps.hull_arcs,
            "orderings" => &mut caps.orderings,
            "enum-arcs" => &mut caps.enum_arcs,
            "enum-vertices" => &mut caps.enum_vertices,
            "stable" => &mut caps.stable_vertices,
            "exact" => &mut caps.exact_vertices,
            "wmatch" => &mut caps.weighted_matching,
            other => bail!("unknown cap `{other}`"),
        };
        *slot = value;
    }
    Ok(caps)
}
