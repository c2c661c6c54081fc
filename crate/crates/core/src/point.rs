//! Opaque point identifiers.
//!
//! Base spaces use string atoms. Derived spaces nest them: products use
//! [`Point::Pair`], hyperspaces use [`Point::Set`] whose members are kept in
//! the canonical order of the base space they were drawn from.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Atom(String),
    Pair(Box<Point>, Box<Point>),
    Set(Vec<Point>),
}

impl Point {
    pub fn atom(s: impl Into<String>) -> Self {
        Point::Atom(s.into())
    }

    pub fn pair(a: Point, b: Point) -> Self {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Point::Atom(s) => Some(s),
            _ => None,
        }
    }
}

impl From<&str> for Point {
    fn from(s: &str) -> Self {
        Point::Atom(s.to_string())
    }
}

impl From<String> for Point {
    fn from(s: String) -> Self {
        Point::Atom(s)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(s) => write!(f, "{s}"),
            Point::Pair(a, b) => write!(f, "({a},{b})"),
            Point::Set(items) => {
                write!(f, "{{")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Atom(s) => serializer.serialize_str(s),
            Point::Set(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for p in items {
                    seq.serialize_element(p)?;
                }
                seq.end()
            }
            Point::Pair(a, b) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("pair", &(a.as_ref(), b.as_ref()))?;
                map.end()
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPoint {
    Atom(String),
    Set(Vec<Point>),
    Pair { pair: (Point, Point) },
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match RawPoint::deserialize(deserializer) {
            Ok(RawPoint::Atom(s)) => Ok(Point::Atom(s)),
            Ok(RawPoint::Set(v)) => Ok(Point::Set(v)),
            Ok(RawPoint::Pair { pair: (a, b) }) => Ok(Point::pair(a, b)),
            Err(_) => Err(de::Error::custom(
                "expected a point: string, array of points, or {\"pair\": [a, b]}",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        let p = Point::Set(vec![Point::atom("a"), Point::Set(vec![Point::atom("b")])]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["a",["b"]]"#);
        let back: Point = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);

        let q = Point::pair(Point::atom("1"), Point::atom("x"));
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"pair":["1","x"]}"#);
        assert_eq!(serde_json::from_str::<Point>(&s).unwrap(), q);
        assert_eq!(q.to_string(), "(1,x)");
    }
}
