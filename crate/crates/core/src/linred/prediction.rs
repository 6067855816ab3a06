use serde::{Deserialize, Serialize};

use crate::spectra::{EVMultiset, Source};

/// Scalars derived while building a prediction.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    /// Real parts, row-major rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<f64>>>,
}

/// A predicted eigenvalue multiset with the recipe that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "PredictionDoc", from = "PredictionDoc")]
pub struct Prediction {
    pub recipe: String,
    pub parameters: serde_json::Value,
    pub provenance: Provenance,
    pub multiset: EVMultiset,
}

#[derive(Serialize, Deserialize)]
struct PredictionDoc {
    recipe: String,
    #[serde(default)]
    parameters: serde_json::Value,
    #[serde(default)]
    provenance: Provenance,
    eigenvalues: Vec<f64>,
}

impl From<Prediction> for PredictionDoc {
    fn from(p: Prediction) -> Self {
        PredictionDoc {
            recipe: p.recipe,
            parameters: p.parameters,
            provenance: p.provenance,
            eigenvalues: p.multiset.values().to_vec(),
        }
    }
}

impl From<PredictionDoc> for Prediction {
    fn from(d: PredictionDoc) -> Self {
        Prediction {
            recipe: d.recipe,
            parameters: d.parameters,
            provenance: d.provenance,
            multiset: EVMultiset::new(d.eigenvalues, Source::Predicted),
        }
    }
}

impl Prediction {
    pub fn new(recipe: &str, parameters: serde_json::Value, values: Vec<f64>) -> Self {
        Prediction {
            recipe: recipe.to_string(),
            parameters,
            provenance: Provenance::default(),
            multiset: EVMultiset::new(values, Source::Predicted),
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn moment(&self, k: u32) -> f64 {
        self.multiset.moment(k)
    }
}
