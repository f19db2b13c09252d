//! JSON task files: optional settings plus an ordered list of commands.
//!
//! ```json
//! {
//!   "settings": { "order": "lex", "boundary-sign": "+" },
//!   "commands": [
//!     { "command": "tame", "place": "0", "f": "t", "g": "1 - t" },
//!     { "command": "cyclic-rank", "theory": "hc", "base": "Q[x]", "n": 2, "d": 1 }
//!   ]
//! }
//! ```

use std::path::Path;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::commands::{Command, Outcome, Settings};
use crate::{CliError, CliResult};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    #[serde(default)]
    pub settings: Settings,
    pub commands: Vec<Command>,
}

impl TaskFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Runs the commands concurrently; results come back in file order.
    pub fn run(&self, settings: &Settings, cache: &Cache) -> Vec<CliResult<Outcome>> {
        let workers = thread::available_parallelism().map_or(1, |n| n.get());
        let mut results: Vec<Option<CliResult<Outcome>>> = Vec::new();
        results.resize_with(self.commands.len(), || None);
        for (chunk_idx, chunk) in self.commands.chunks(workers).enumerate() {
            let done: Vec<CliResult<Outcome>> = thread::scope(|s| {
                let handles: Vec<_> = chunk
                    .iter()
                    .map(|c| s.spawn(move || c.execute(settings, cache)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| {
                        h.join()
                            .unwrap_or_else(|_| Err(CliError::Usage("command panicked".into())))
                    })
                    .collect()
            });
            for (k, r) in done.into_iter().enumerate() {
                results[chunk_idx * workers + k] = Some(r);
            }
        }
        results.into_iter().map(Option::unwrap).collect()
    }
}
