//! Reports in a human-readable and a line-oriented `key=value` form.

use std::fmt::Write as _;

use flavorkit_core::chain::{HomologyTable, LesCertificate};
use flavorkit_core::exactlin::AbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Section(String),
    Group { section: String, degree: i64, group: AbelianGroup },
    Check { tag: String, name: String, passed: bool, detail: Option<String> },
    Summary(Vec<(String, String)>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub items: Vec<Item>,
    section: String,
}

fn machine_value(s: &str) -> String {
    s.replace(" + ", "+").replace(' ', "_")
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.into(), items: Vec::new(), section: String::new() }
    }

    pub fn section(&mut self, name: impl Into<String>) {
        self.section = name.into();
        self.items.push(Item::Section(self.section.clone()));
    }

    pub fn group(&mut self, degree: i64, group: AbelianGroup) {
        self.items.push(Item::Group { section: self.section.clone(), degree, group });
    }

    /// Every degree of the table, zero groups included.
    pub fn table(&mut self, t: &HomologyTable) {
        for (&j, g) in &t.groups {
            self.group(j, g.clone());
        }
    }

    pub fn check(&mut self, tag: &str, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.items.push(Item::Check { tag: tag.into(), name: name.into(), passed, detail });
    }

    /// One line per long exact sequence, failing on the first inexact node.
    pub fn les(&mut self, tag: &str, name: &str, c: &LesCertificate) {
        let detail = match c.first_failure() {
            Some(n) => Some(format!("inexact at {:?}_{}", n.spot, n.degree)),
            None => Some(format!("{} nodes", c.checked())),
        };
        self.check(tag, name, c.all_exact(), detail);
    }

    pub fn summary(&mut self, pairs: &[(&str, String)]) {
        self.items.push(Item::Summary(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()));
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| !matches!(i, Item::Check { passed: false, .. }))
    }

    pub fn render(&self, f: Format) -> String {
        let mut out = String::new();
        match f {
            Format::Text => {
                for item in &self.items {
                    let _ = match item {
                        Item::Section(s) => writeln!(out, "[{s}]"),
                        Item::Group { degree, group, .. } => writeln!(out, "H_{degree} = {group}"),
                        Item::Check { tag, name, passed, detail } => {
                            let status = if *passed { "PASS" } else { "FAIL" };
                            match detail {
                                Some(d) => writeln!(out, "{status} {tag} {name} ({d})"),
                                None => writeln!(out, "{status} {tag} {name}"),
                            }
                        }
                        Item::Summary(ps) => {
                            let parts: Vec<String> = ps.iter().map(|(k, v)| format!("{k}={v}")).collect();
                            writeln!(out, "{}", parts.join(", "))
                        }
                    };
                }
            }
            Format::Machine => {
                let _ = writeln!(out, "command={}", self.command);
                for item in &self.items {
                    let _ = match item {
                        Item::Section(s) => writeln!(out, "section name={}", machine_value(s)),
                        Item::Group { section, degree, group } => writeln!(
                            out,
                            "group section={} degree={degree} value={}",
                            machine_value(section),
                            machine_value(&group.to_string())
                        ),
                        Item::Check { tag, name, passed, detail } => writeln!(
                            out,
                            "check tag={} name={} status={}{}",
                            machine_value(tag),
                            machine_value(name),
                            if *passed { "pass" } else { "fail" },
                            detail.as_ref().map(|d| format!(" detail={}", machine_value(d))).unwrap_or_default()
                        ),
                        Item::Summary(ps) => {
                            let parts: Vec<String> = ps.iter().map(|(k, v)| format!("{k}={}", machine_value(v))).collect();
                            writeln!(out, "summary {}", parts.join(" "))
                        }
                    };
                }
                let _ = writeln!(out, "status={}", if self.passed() { "pass" } else { "fail" });
            }
        }
        out
    }
}
