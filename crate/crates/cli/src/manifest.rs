//! Run manifests: the exact invocation plus digests of everything written.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// `<out>.manifest.json`.
pub fn sidecar(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64())
}

pub struct Manifest {
    fields: Map<String, Value>,
    outputs: Map<String, Value>,
}

impl Manifest {
    pub fn start(argv: Vec<String>, threads: Option<usize>) -> Self {
        let mut fields = Map::new();
        fields.insert(
            "command".into(),
            json!(argv.get(1).cloned().unwrap_or_default()),
        );
        fields.insert("argv".into(), json!(argv));
        fields.insert("library_version".into(), json!(env!("CARGO_PKG_VERSION")));
        fields.insert(
            "threads".into(),
            json!(threads.unwrap_or_else(rayon::current_num_threads)),
        );
        fields.insert("started_unix".into(), json!(now()));
        fields.insert("seed".into(), Value::Null);
        Manifest {
            fields,
            outputs: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.fields.insert(key.into(), json!(value));
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.fields.insert("seed".into(), json!(seed));
    }

    pub fn add_output(&mut self, path: &Path, bytes: &[u8]) {
        self.outputs.insert(
            path.display().to_string(),
            json!({ "sha256": sha256_hex(bytes), "bytes": bytes.len() }),
        );
    }

    pub fn write(mut self, path: &Path) -> std::io::Result<()> {
        self.fields.insert("finished_unix".into(), json!(now()));
        self.fields
            .insert("outputs".into(), Value::Object(self.outputs));
        let text =
            serde_json::to_string_pretty(&Value::Object(self.fields)).expect("plain JSON") + "\n";
        fs::write(path, text)
    }
}
