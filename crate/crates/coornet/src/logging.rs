//! Minimal stderr logging gated by the `COORNET_LOG` environment variable
//! (`quiet`, `warn`, `info`, `debug`; default `warn`) or an explicit level
//! set by the CLI's verbosity flags.

use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Quiet = 0,
    Warn = 1,
    Info = 2,
    Debug = 3,
}

static LEVEL: AtomicU8 = AtomicU8::new(u8::MAX);
static ENV_DEFAULT: OnceLock<Level> = OnceLock::new();

fn env_default() -> Level {
    *ENV_DEFAULT.get_or_init(|| {
        match std::env::var("COORNET_LOG").as_deref() {
            Ok("quiet") | Ok("off") => Level::Quiet,
            Ok("info") => Level::Info,
            Ok("debug") => Level::Debug,
            _ => Level::Warn,
        }
    })
}

fn current() -> Level {
    match LEVEL.load(Ordering::Relaxed) {
        0 => Level::Quiet,
        1 => Level::Warn,
        2 => Level::Info,
        3 => Level::Debug,
        _ => env_default(),
    }
}

/// Override the env-derived level; used by the CLI `-v` flags.
pub fn set_level(level: Level) {
    LEVEL.store(level as u8, Ordering::Relaxed);
}

pub fn warn(message: impl AsRef<str>) {
    if current() >= Level::Warn {
        eprintln!("warning: {}", message.as_ref());
    }
}

pub fn info(message: impl AsRef<str>) {
    if current() >= Level::Info {
        eprintln!("info: {}", message.as_ref());
    }
}

pub fn debug(message: impl AsRef<str>) {
    if current() >= Level::Debug {
        eprintln!("debug: {}", message.as_ref());
    }
}
