//! Bundled algebra specs.

use crate::error::CliError;
use crate::spec::AlgebraSpec;

pub const PRESETS: &[(&str, &str)] = &[
    ("weyl-q", include_str!("../presets/weyl-q.toml")),
    ("weyl-fp", include_str!("../presets/weyl-fp.toml")),
    ("weyl-q-dpr", include_str!("../presets/weyl-q-dpr.toml")),
    ("weyl-fp-dpr", include_str!("../presets/weyl-fp-dpr.toml")),
    ("hh3-gwa", include_str!("../presets/hh3-gwa.toml")),
    ("quantum-plane-gwa", include_str!("../presets/quantum-plane-gwa.toml")),
    ("usl2-dpr", include_str!("../presets/usl2-dpr.toml")),
    ("oq2so3-dpr", include_str!("../presets/oq2so3-dpr.toml")),
    ("rank2-weyl", include_str!("../presets/rank2-weyl.toml")),
    ("theta-rank2", include_str!("../presets/theta-rank2.toml")),
];

pub fn preset_text(name: &str) -> Result<&'static str, CliError> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CliError::CommandUnknown(format!("preset '{name}'")))
}

pub fn preset(name: &str) -> Result<AlgebraSpec, CliError> {
    AlgebraSpec::from_toml(preset_text(name)?)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}
