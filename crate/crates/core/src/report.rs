//! Structured estimator output and its JSON/CSV forms.
//!
//! Floats are written with 17 significant digits so reports round-trip
//! exactly; infinities and NaN become the strings `"inf"`, `"-inf"`, `"nan"`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// (De)serialization of `f64` in the fixed report format.
pub mod json_float {
    use serde::de::{self, Deserializer};
    use serde::ser::{Error as _, Serializer};
    use serde::{Deserialize, Serialize};
    use serde_json::value::RawValue;

    pub fn format(x: f64) -> String {
        if x.is_nan() {
            "\"nan\"".into()
        } else if x == f64::INFINITY {
            "\"inf\"".into()
        } else if x == f64::NEG_INFINITY {
            "\"-inf\"".into()
        } else {
            format!("{x:.16e}")
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(format(*x)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum NumOrStr {
        Num(f64),
        Str(String),
    }

    pub fn parse(v: NumOrStrPub) -> Option<f64> {
        match v.0 {
            NumOrStr::Num(x) => Some(x),
            NumOrStr::Str(s) => match s.as_str() {
                "inf" => Some(f64::INFINITY),
                "-inf" => Some(f64::NEG_INFINITY),
                "nan" => Some(f64::NAN),
                _ => None,
            },
        }
    }

    #[doc(hidden)]
    #[derive(Deserialize)]
    #[serde(transparent)]
    pub struct NumOrStrPub(NumOrStr);

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let v = NumOrStrPub::deserialize(d)?;
        parse(v).ok_or_else(|| de::Error::custom("expected a number, \"inf\", \"-inf\" or \"nan\""))
    }

    /// Vectors of floats.
    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                let raw = RawValue::from_string(format(*x)).map_err(S::Error::custom)?;
                seq.serialize_element(&raw)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            let v = Vec::<NumOrStrPub>::deserialize(d)?;
            v.into_iter()
                .map(|x| parse(x).ok_or_else(|| de::Error::custom("bad float")))
                .collect()
        }
    }

    /// Nested vectors of floats.
    pub mod vec2 {
        use super::*;
        use serde::ser::SerializeSeq;

        struct Row<'a>(&'a [f64]);

        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                super::vec::serialize(self.0, s)
            }
        }

        pub fn serialize<S: Serializer>(xs: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for row in xs {
                seq.serialize_element(&Row(row))?;
            }
            seq.end()
        }

        #[derive(Deserialize)]
        #[serde(transparent)]
        struct DRow(#[serde(with = "super::vec")] Vec<f64>);

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
            Ok(Vec::<DRow>::deserialize(d)?
                .into_iter()
                .map(|r| r.0)
                .collect())
        }
    }
}

/// What a report measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    ExtrinsicCurvature,
    CatUpperBound,
    Gauss,
    Injectivity,
    ClosedGeodesic,
    FanConvexity,
    TubeCurvature,
    FermiContraction,
    ProjectionBound,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::ExtrinsicCurvature => "extrinsic_curvature",
            Quantity::CatUpperBound => "cat_upper_bound",
            Quantity::Gauss => "gauss",
            Quantity::Injectivity => "injectivity",
            Quantity::ClosedGeodesic => "closed_geodesic",
            Quantity::FanConvexity => "fan_convexity",
            Quantity::TubeCurvature => "tube_curvature",
            Quantity::FermiContraction => "fermi_contraction",
            Quantity::ProjectionBound => "projection_bound",
        }
    }
}

/// One extremal item: the sample ids involved and its defect or ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub ids: Vec<usize>,
    #[serde(with = "json_float")]
    pub value: f64,
}

/// A named scalar reported next to the main value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extra {
    pub name: String,
    #[serde(with = "json_float")]
    pub value: f64,
}

/// A numeric table (shell profiles, defect profiles) for CSV output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub columns: Vec<String>,
    #[serde(with = "json_float::vec2")]
    pub rows: Vec<Vec<f64>>,
}

impl Profile {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| csv_float(*x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `inf`, `-inf`, `nan` or 17 significant digits.
pub fn csv_float(x: f64) -> String {
    json_float::format(x).trim_matches('"').to_string()
}

/// Result of an estimator or theorem check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub quantity: Quantity,
    #[serde(with = "json_float")]
    pub value: f64,
    #[serde(with = "json_float")]
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub n: usize,
    pub samples_used: usize,
    pub extras: Vec<Extra>,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
}

/// Number of extremal items kept in a report.
pub const TOP_DIAGNOSTICS: usize = 20;

impl EstimateReport {
    pub fn new(quantity: Quantity, value: f64, tolerance: f64, pass: bool) -> Self {
        Self {
            quantity,
            value,
            tolerance,
            pass,
            seed: 0,
            n: 0,
            samples_used: 0,
            extras: Vec::new(),
            diagnostics: Vec::new(),
            profile: None,
        }
    }

    pub fn with_extra(mut self, name: &str, value: f64) -> Self {
        self.extras.push(Extra {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn extra(&self, name: &str) -> Option<f64> {
        self.extras.iter().find(|e| e.name == name).map(|e| e.value)
    }

    /// Keeps the [`TOP_DIAGNOSTICS`] smallest (or largest) items, ties broken by ids.
    pub fn set_extremal(&mut self, mut items: Vec<Diagnostic>, smallest: bool) {
        items.sort_by(|a, b| {
            let o = a.value.total_cmp(&b.value);
            let o = if smallest { o } else { o.reverse() };
            o.then_with(|| a.ids.cmp(&b.ids))
        });
        items.truncate(TOP_DIAGNOSTICS);
        self.diagnostics = items;
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| GeomError::Serde(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| GeomError::Serde(e.to_string()))
    }

    /// The profile table if present, otherwise the diagnostics.
    pub fn to_csv(&self) -> String {
        if let Some(p) = &self.profile {
            return p.to_csv();
        }
        let mut out = String::from("quantity,ids,value\n");
        for d in &self.diagnostics {
            let ids: Vec<String> = d.ids.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!(
                "{},{},{}\n",
                self.quantity.as_str(),
                ids.join(";"),
                csv_float(d.value)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_exact() {
        let mut r = EstimateReport::new(Quantity::Gauss, 0.1 + 0.2, f64::INFINITY, true)
            .with_extra("gap", -1.0 / 3.0);
        r.seed = 42;
        r.set_extremal(
            vec![
                Diagnostic {
                    ids: vec![3, 1],
                    value: 2.0,
                },
                Diagnostic {
                    ids: vec![0, 1],
                    value: -1e-300,
                },
            ],
            true,
        );
        let mut p = Profile::new(&["r", "q"]);
        p.rows.push(vec![0.5, f64::NEG_INFINITY]);
        r.profile = Some(p);
        let s = r.to_json().unwrap();
        assert!(s.contains("\"inf\""));
        assert!(s.contains("3.0000000000000004e-1"));
        let back = EstimateReport::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn extremal_items_are_sorted_and_truncated() {
        let mut r = EstimateReport::new(Quantity::CatUpperBound, 0.0, 0.0, true);
        let items = (0..50)
            .map(|i| Diagnostic {
                ids: vec![i],
                value: (i % 7) as f64,
            })
            .collect();
        r.set_extremal(items, false);
        assert_eq!(r.diagnostics.len(), TOP_DIAGNOSTICS);
        assert_eq!(r.diagnostics[0].value, 6.0);
        assert_eq!(r.diagnostics[0].ids, vec![6]);
    }

    #[test]
    fn csv_forms() {
        let mut r = EstimateReport::new(Quantity::FanConvexity, 1.0, 0.5, false);
        r.diagnostics.push(Diagnostic {
            ids: vec![1, 2],
            value: -0.25,
        });
        assert_eq!(
            r.to_csv(),
            "quantity,ids,value\nfan_convexity,1;2,-2.5000000000000000e-1\n"
        );
        assert_eq!(csv_float(f64::INFINITY), "inf");
    }
}
