use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::SimpleSpec;
use crate::error::{Error, Result};

use super::WElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// T^k only.
    #[serde(rename = "socle")]
    Socle,
    /// T^k.(Out(T) x S_k).
    #[serde(rename = "full_W")]
    FullW,
    /// Built from `out_part`, `top`, `q` and any extra generators.
    #[serde(rename = "custom")]
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedOut {
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "none")]
    None,
}

/// The diagonal automorphisms of G: all of Out(T), none, or the subgroup
/// generated by the listed Out labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutPart {
    Named(NamedOut),
    Labels(Vec<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedTop {
    S,
    A,
    #[serde(rename = "trivial")]
    Trivial,
}

/// The top group P <= S_k, named or by explicit generators (image lists on `0..k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TopPart {
    Named(NamedTop),
    Generators(Vec<Vec<u32>>),
}

/// Whether pure top elements form all of P (`S`) or only its even part (`A`).
/// In the latter case every odd top generator is paired with the outer
/// automorphism class `twist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QLabel {
    S,
    A,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalConfig {
    #[serde(rename = "T")]
    pub t: SimpleSpec,
    pub k: usize,
    #[serde(default = "default_preset")]
    pub preset: Preset,
    #[serde(default = "default_out")]
    pub out_part: OutPart,
    #[serde(default = "default_top")]
    pub top: TopPart,
    #[serde(default = "default_q")]
    pub q: QLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<WElement>,
}

fn default_preset() -> Preset {
    Preset::Custom
}
fn default_out() -> OutPart {
    OutPart::Named(NamedOut::None)
}
fn default_top() -> TopPart {
    TopPart::Named(NamedTop::S)
}
fn default_q() -> QLabel {
    QLabel::S
}

impl DiagonalConfig {
    pub fn socle(t: SimpleSpec, k: usize) -> Self {
        DiagonalConfig {
            t,
            k,
            preset: Preset::Socle,
            out_part: OutPart::Named(NamedOut::None),
            top: TopPart::Named(NamedTop::Trivial),
            q: QLabel::S,
            twist: None,
            generators: Vec::new(),
        }
    }

    pub fn full(t: SimpleSpec, k: usize) -> Self {
        DiagonalConfig {
            preset: Preset::FullW,
            out_part: OutPart::Named(NamedOut::Full),
            top: TopPart::Named(NamedTop::S),
            ..Self::socle(t, k)
        }
    }

    pub fn custom(t: SimpleSpec, k: usize, out_part: OutPart, top: TopPart, q: QLabel, twist: Option<u32>) -> Self {
        DiagonalConfig {
            t,
            k,
            preset: Preset::Custom,
            out_part,
            top,
            q,
            twist,
            generators: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    /// SHA-256 of the compact JSON form.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn label(&self) -> String {
        match self.preset {
            Preset::Socle => format!("{}^{} socle", self.t, self.k),
            Preset::FullW => format!("{}^{} full", self.t, self.k),
            Preset::Custom => format!("{}^{} {}", self.t, self.k, self.to_json()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_schema() {
        let c = DiagonalConfig::from_json(
            r#"{"T":{"family":"Alt","n":5},"k":2,"preset":"full_W","out_part":"full","top":"S","q":"S"}"#,
        )
        .unwrap();
        assert_eq!(c.t, SimpleSpec::alt(5));
        assert_eq!(c.preset, Preset::FullW);
        let c = DiagonalConfig::from_json(
            r#"{"T":{"family":"PSL2","q":8},"k":3,"out_part":[1],"top":[[1,2,0]],"q":"A","twist":1}"#,
        )
        .unwrap();
        assert_eq!(c.out_part, OutPart::Labels(vec![1]));
        assert_eq!(c.top, TopPart::Generators(vec![vec![1, 2, 0]]));
        assert_eq!(DiagonalConfig::from_json(&c.to_json()).unwrap(), c);
        assert!(DiagonalConfig::from_json(r#"{"k":2}"#).is_err());
    }
}
