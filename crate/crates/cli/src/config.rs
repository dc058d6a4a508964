use std::time::Duration;

use ibis_core::analysis::SearchCaps;
use ibis_core::ct::DEFAULT_CT_CAP;
use ibis_core::Limits;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub node_cap: u64,
    pub time_cap_seconds: u64,
    pub degree_cap: u64,
    pub enumeration_cap: u64,
    pub ct_cap: u64,
    pub workers: usize,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        let caps = SearchCaps::default();
        let limits = Limits::default();
        RunConfig {
            node_cap: caps.nodes,
            time_cap_seconds: caps.time.as_secs(),
            degree_cap: limits.degree_cap,
            enumeration_cap: limits.enumeration_cap,
            ct_cap: DEFAULT_CT_CAP,
            workers: 1,
            output_format: OutputFormat::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let caps = [
            ("--nodes", self.node_cap),
            ("--time", self.time_cap_seconds),
            ("--degree-cap", self.degree_cap),
            ("--enumeration-cap", self.enumeration_cap),
        ];
        if let Some((flag, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(format!("{flag} must be positive"));
        }
        if self.workers == 0 {
            return Err("--workers must be at least 1".into());
        }
        Ok(())
    }

    pub fn caps(&self) -> SearchCaps {
        SearchCaps {
            nodes: self.node_cap,
            time: Duration::from_secs(self.time_cap_seconds),
            workers: self.workers,
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            degree_cap: self.degree_cap,
            enumeration_cap: self.enumeration_cap,
        }
    }
}
