//! Sequence file format: a JSON array of decimal strings, or a single line of
//! comma-separated decimal integers. Writers emit JSON unless asked for CSV.

use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, IntSeq, Natural, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`"))),
        }
    }
}

pub fn write_sequence(seq: &IntSeq, format: Format) -> String {
    match format {
        Format::Json => to_json(seq),
        Format::Csv => seq.to_string(),
    }
}

pub fn to_json(seq: &IntSeq) -> String {
    let strings: Vec<String> = seq.iter().map(Natural::to_string).collect();
    serde_json::to_string(&strings).expect("string arrays always serialize")
}

/// Parses either accepted encoding, detected by a leading `[`.
pub fn parse_sequence(text: &str) -> Result<IntSeq> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        parse_json(trimmed)
    } else {
        parse_csv(trimmed)
    }
}

fn parse_json(text: &str) -> Result<IntSeq> {
    let values: Vec<serde_json::Value> = serde_json::from_str(text)?;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            serde_json::Value::String(s) => parse_decimal(s, i + 1),
            serde_json::Value::Number(num) if num.is_u64() => {
                Ok(Natural::from(num.as_u64().unwrap()))
            }
            other => Err(Error::Parse {
                position: i + 1,
                message: format!("expected a decimal string, found {other}"),
            }),
        })
        .collect()
}

pub fn parse_csv(text: &str) -> Result<IntSeq> {
    let trimmed = text.trim();
    if trimmed.contains('\n') {
        return Err(Error::Parse {
            position: 1,
            message: "CSV sequences must be a single line".into(),
        });
    }
    if trimmed.is_empty() {
        return Ok(IntSeq::default());
    }
    trimmed
        .split(',')
        .enumerate()
        .map(|(i, field)| parse_decimal(field.trim(), i + 1))
        .collect()
}

fn parse_decimal(s: &str, position: usize) -> Result<Natural> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            position,
            message: format!("`{s}` is not a nonnegative decimal integer"),
        });
    }
    Ok(s.parse().expect("validated digits"))
}

/// Serde adapter storing a sequence as an array of decimal strings.
pub mod decimal_strings {
    use super::*;

    pub fn serialize<S: Serializer>(seq: &IntSeq, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = seq.iter().map(Natural::to_string).collect();
        strings.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<IntSeq, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .enumerate()
            .map(|(i, s)| parse_decimal(s, i + 1).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_both_encodings() {
        let expected = IntSeq::from_u64s(&[1, 1, 3, 11, 44]);
        assert_eq!(
            parse_sequence(r#"["1","1","3","11","44"]"#).unwrap(),
            expected
        );
        assert_eq!(parse_sequence("1,1,3,11,44\n").unwrap(), expected);
        assert_eq!(parse_sequence("[]").unwrap(), IntSeq::default());
        assert_eq!(parse_sequence("").unwrap(), IntSeq::default());
    }

    #[test]
    fn rejects_malformed_fields() {
        assert!(matches!(
            parse_sequence("1,-2,3"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_sequence(r#"["1","x"]"#),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(parse_sequence("1,2\n3"), Err(Error::Parse { .. })));
        assert!(parse_sequence("[1,").is_err());
    }

    #[test]
    fn json_uses_strings() {
        let big: Natural = "123456789012345678901234567890".parse().unwrap();
        let seq = IntSeq::new(vec![Natural::from(0u8), big]);
        assert_eq!(to_json(&seq), r#"["0","123456789012345678901234567890"]"#);
        assert_eq!(
            write_sequence(&seq, Format::Csv),
            "0,123456789012345678901234567890"
        );
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(terms in proptest::collection::vec(any::<u128>(), 0..20), csv in any::<bool>()) {
            let seq: IntSeq = terms.into_iter().map(Natural::from).collect();
            let format = if csv { Format::Csv } else { Format::Json };
            prop_assert_eq!(parse_sequence(&write_sequence(&seq, format)).unwrap(), seq);
        }
    }
}
