use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
/// Unsatisfiable, inconsistent or failing verdict.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        Self {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Output of one invocation. Object keys serialize sorted, so identical
/// runs give identical bytes.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub exit_status: i32,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|d| json!({ "path": d.path, "sha256": d.sha256 }))
            .collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": self.results,
            "exit_status": self.exit_status,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_hex_sha256() {
        let d = InputDigest::of("x", b"abc");
        assert_eq!(
            d.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn keys_are_sorted() {
        let r = Report {
            command: vec!["axioms".into()],
            inputs: vec![],
            results: json!({ "z": 1, "a": 2 }),
            exit_status: 0,
        };
        let text = r.to_json();
        let order: Vec<usize> = [
            "\"command\"",
            "\"exit_status\"",
            "\"inputs\"",
            "\"results\"",
        ]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
    }
}
