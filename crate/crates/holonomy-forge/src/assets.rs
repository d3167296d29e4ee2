//! Bundled data assets and the override mechanism.
//!
//! Every asset ships embedded in the binary. Setting the environment
//! variable `HOLONOMY_FORGE_ASSETS` to a directory makes files of the same
//! name there take precedence, which is how alternative tables or example
//! inputs are supplied without rebuilding.

/// Environment variable naming a directory that overrides bundled assets.
pub const ASSETS_ENV: &str = "HOLONOMY_FORGE_ASSETS";

const BUNDLED: &[(&str, &str)] = &[
    ("joyce_example.orb", include_str!("../assets/joyce_example.orb")),
    ("joyce_wps.ywp", include_str!("../assets/joyce_wps.ywp")),
    ("estimates_default.est", include_str!("../assets/estimates_default.est")),
    ("ade_table", include_str!("../assets/ade_table")),
    ("g2_betti_catalogue", include_str!("../assets/g2_betti_catalogue")),
    ("spin7_betti_catalogue", include_str!("../assets/spin7_betti_catalogue")),
];

pub fn asset_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// Text of a bundled asset, honoring the `HOLONOMY_FORGE_ASSETS` override.
/// Panics if the name is unknown; use [`try_asset_text`] for fallible lookup.
pub fn asset_text(name: &str) -> String {
    try_asset_text(name).unwrap_or_else(|| panic!("unknown asset {name}"))
}

pub fn try_asset_text(name: &str) -> Option<String> {
    if let Ok(dir) = std::env::var(ASSETS_ENV) {
        let path = std::path::Path::new(&dir).join(name);
        if let Ok(text) = std::fs::read_to_string(&path) {
            return Some(text);
        }
    }
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| (*t).to_string())
}

/// The catalogue of (b², b³) pairs realized by the torus-quotient G2
/// construction.
pub fn g2_betti_catalogue() -> Vec<(usize, usize)> {
    asset_text("g2_betti_catalogue")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let b2 = it.next().unwrap().parse().unwrap();
            let b3 = it.next().unwrap().parse().unwrap();
            (b2, b3)
        })
        .collect()
}

/// The catalogue of (b², b³, b⁴) triples realized by the Calabi–Yau
/// 4-orbifold Spin(7) construction.
pub fn spin7_betti_catalogue() -> Vec<(usize, usize, usize)> {
    asset_text("spin7_betti_catalogue")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let b2 = it.next().unwrap().parse().unwrap();
            let b3 = it.next().unwrap().parse().unwrap();
            let b4 = it.next().unwrap().parse().unwrap();
            (b2, b3, b4)
        })
        .collect()
}
