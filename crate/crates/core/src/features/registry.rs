//! Named, ordered feature columns and the seven dataset combinations.
//!
//! The registry is the single source of truth for column order: 19 AOI
//! dwell fractions, then 7 eye-movement features, then 37 flight features.
//! The saccade count is computed by [`super::eye::EmFeatures`] but is not a
//! column; it always equals the fixation count minus one and would only
//! duplicate that column.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::flight::QarFeatures;
use crate::telemetry::AoiName;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FeatureGroup {
    Aoi,
    Em,
    Qar,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 3] = [FeatureGroup::Aoi, FeatureGroup::Em, FeatureGroup::Qar];

    pub fn prefix(self) -> &'static str {
        match self {
            FeatureGroup::Aoi => "aoi",
            FeatureGroup::Em => "em",
            FeatureGroup::Qar => "qar",
        }
    }

    fn bit(self) -> u8 {
        match self {
            FeatureGroup::Aoi => 1,
            FeatureGroup::Em => 2,
            FeatureGroup::Qar => 4,
        }
    }
}

/// Registry names of the eye-movement columns, in order.
pub const EM_NAMES: [&str; 7] = [
    "sd_fix_x",
    "sd_fix_y",
    "sd_fix_z",
    "eye_opening_mean",
    "aoi_transition_freq",
    "fixation_duration_mean",
    "fixation_count",
];

/// A non-empty subset of the three feature groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DatasetCombo(u8);

impl DatasetCombo {
    pub const AOI: DatasetCombo = DatasetCombo(1);
    pub const EM: DatasetCombo = DatasetCombo(2);
    pub const QAR: DatasetCombo = DatasetCombo(4);
    pub const AOI_EM: DatasetCombo = DatasetCombo(3);
    pub const AOI_QAR: DatasetCombo = DatasetCombo(5);
    pub const EM_QAR: DatasetCombo = DatasetCombo(6);
    pub const ALL_GROUPS: DatasetCombo = DatasetCombo(7);

    /// The seven combinations in reporting order.
    pub const ALL: [DatasetCombo; 7] = [
        DatasetCombo::AOI,
        DatasetCombo::EM,
        DatasetCombo::QAR,
        DatasetCombo::AOI_EM,
        DatasetCombo::AOI_QAR,
        DatasetCombo::EM_QAR,
        DatasetCombo::ALL_GROUPS,
    ];

    pub fn from_groups(groups: &[FeatureGroup]) -> Option<DatasetCombo> {
        let bits = groups.iter().fold(0, |acc, g| acc | g.bit());
        (bits != 0).then_some(DatasetCombo(bits))
    }

    pub fn contains(self, group: FeatureGroup) -> bool {
        self.0 & group.bit() != 0
    }

    pub fn groups(self) -> Vec<FeatureGroup> {
        FeatureGroup::ALL.into_iter().filter(|g| self.contains(*g)).collect()
    }

    /// File-name friendly key, e.g. `aoi_em_qar`.
    pub fn name(self) -> String {
        self.groups().iter().map(|g| g.prefix()).collect::<Vec<_>>().join("_")
    }

    /// Display form, e.g. `AOI & EM & QAR`.
    pub fn label(self) -> String {
        self.groups()
            .iter()
            .map(|g| g.prefix().to_uppercase())
            .collect::<Vec<_>>()
            .join(" & ")
    }
}

impl fmt::Display for DatasetCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for DatasetCombo {
    type Err = String;

    /// Accepts `aoi_em_qar`, `aoi,em,qar`, `AOI&EM&QAR`, `all`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if s == "all" {
            return Ok(DatasetCombo::ALL_GROUPS);
        }
        let mut groups = Vec::new();
        for part in s.split(|c: char| c == ',' || c == '_' || c == '&' || c == '+' || c.is_whitespace()) {
            match part {
                "" => {}
                "aoi" => groups.push(FeatureGroup::Aoi),
                "em" => groups.push(FeatureGroup::Em),
                "qar" => groups.push(FeatureGroup::Qar),
                other => return Err(format!("unknown dataset `{other}` (expected aoi, em, qar)")),
            }
        }
        DatasetCombo::from_groups(&groups).ok_or_else(|| "empty dataset combination".to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureDef {
    pub name: String,
    pub group: FeatureGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureRegistry {
    features: Vec<FeatureDef>,
}

impl Default for FeatureRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl FeatureRegistry {
    /// The 63-column registry: 19 AOI, 7 EM, 37 QAR.
    pub fn standard() -> Self {
        let aoi = AoiName::NAMED
            .iter()
            .map(|a| (FeatureGroup::Aoi, a.key().to_string()));
        let em = EM_NAMES.iter().map(|n| (FeatureGroup::Em, n.to_string()));
        let qar = QarFeatures::NAMES.iter().map(|n| (FeatureGroup::Qar, n.to_string()));
        let features = aoi
            .chain(em)
            .chain(qar)
            .map(|(group, key)| FeatureDef {
                name: format!("{}.{key}", group.prefix()),
                group,
            })
            .collect();
        FeatureRegistry { features }
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn features(&self) -> &[FeatureDef] {
        &self.features
    }

    pub fn names(&self) -> Vec<String> {
        self.features.iter().map(|f| f.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.features.iter().position(|f| f.name == name)
    }

    pub fn group_of(&self, name: &str) -> Option<FeatureGroup> {
        self.index_of(name).map(|i| self.features[i].group)
    }

    pub fn count(&self, group: FeatureGroup) -> usize {
        self.features.iter().filter(|f| f.group == group).count()
    }

    /// Registry indices of the columns belonging to `combo`, ascending.
    pub fn indices(&self, combo: DatasetCombo) -> Vec<usize> {
        (0..self.features.len())
            .filter(|&i| combo.contains(self.features[i].group))
            .collect()
    }

    pub fn names_for(&self, combo: DatasetCombo) -> Vec<String> {
        self.indices(combo)
            .into_iter()
            .map(|i| self.features[i].name.clone())
            .collect()
    }

    /// Hex SHA-256 over the ordered column names.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for f in &self.features {
            h.update(f.name.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}
