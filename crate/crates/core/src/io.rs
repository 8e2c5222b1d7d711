//! JSON configuration format.
//!
//! A configuration is `{"n": <count>, "points": [[x, y, z], ...]}` with each
//! coordinate an exact rational string, integer or `num/den`. Exactness is
//! the point: no float ever touches the data path.

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::rational::{format_rat, parse_rat};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigJson {
    n: usize,
    points: Vec<[String; 3]>,
}

/// Parse a configuration from its JSON form.
///
/// Rejects malformed JSON, unknown fields, an `n` that disagrees with the
/// point list, malformed rationals, and all-zero triples.
pub fn config_from_json(text: &str) -> Result<Configuration> {
    let raw: ConfigJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("configuration JSON: {e}")))?;
    if raw.n != raw.points.len() {
        return Err(Error::Parse(format!(
            "n = {} but {} points are listed",
            raw.n,
            raw.points.len()
        )));
    }
    if raw.points.is_empty() {
        return Err(Error::Parse("a configuration needs at least one point".into()));
    }
    let mut points = Vec::with_capacity(raw.points.len());
    for (row, coords) in raw.points.iter().enumerate() {
        let x = parse_rat(&coords[0])?;
        let y = parse_rat(&coords[1])?;
        let z = parse_rat(&coords[2])?;
        let point = ProjPoint::new(x, y, z)
            .map_err(|_| Error::Parse(format!("point {}: (0, 0, 0) is not projective", row + 1)))?;
        points.push(point);
    }
    Configuration::new(points)
}

/// Serialize a configuration to pretty-printed JSON, coordinates as exact
/// rational strings.
pub fn config_to_json(config: &Configuration) -> String {
    let points = config
        .points()
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            [
                format_rat(&x.clone().into()),
                format_rat(&y.clone().into()),
                format_rat(&z.clone().into()),
            ]
        })
        .collect();
    let raw = ConfigJson { n: config.n(), points };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_generic_config;

    #[test]
    fn round_trips_generated_configs() {
        for seed in 0..25u64 {
            let n = 4 + (seed as usize % 5);
            let config = random_generic_config(n, seed, 30).unwrap();
            let text = config_to_json(&config);
            assert_eq!(config_from_json(&text).unwrap(), config);
        }
    }

    #[test]
    fn parses_fraction_coordinates() {
        let config = config_from_json(
            r#"{"n": 2, "points": [["1/2", "-3", "1"], ["0", "2/7", "5"]]}"#,
        )
        .unwrap();
        assert_eq!(config.n(), 2);
        // (1/2 : -3 : 1) clears denominators to primitive integers.
        assert_eq!(config.points()[0], ProjPoint::from_integers(1, -6, 2).unwrap());
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            "not json",
            r#"{"points": [["1", "0", "0"]]}"#,
            r#"{"n": 2, "points": [["1", "0", "0"]]}"#,
            r#"{"n": 0, "points": []}"#,
            r#"{"n": 1, "points": [["1", "0", "0"]], "extra": 1}"#,
            r#"{"n": 1, "points": [["1", "0"]]}"#,
            r#"{"n": 1, "points": [["1/0", "0", "1"]]}"#,
            r#"{"n": 1, "points": [["1.5", "0", "1"]]}"#,
            r#"{"n": 1, "points": [["0", "0", "0"]]}"#,
        ];
        for text in cases {
            assert!(
                matches!(config_from_json(text), Err(Error::Parse(_))),
                "accepted: {text}"
            );
        }
    }

    #[test]
    fn output_lists_primitive_integer_coordinates() {
        let config = config_from_json(
            r#"{"n": 1, "points": [["1/3", "2/3", "-1"]]}"#,
        )
        .unwrap();
        let text = config_to_json(&config);
        assert!(text.contains("\"1\"") && text.contains("\"2\"") && text.contains("\"-3\""));
    }
}
