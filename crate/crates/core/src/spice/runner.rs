use super::{SpiceError, SIMULATOR_PATH_ENV};
use crate::core::EvaluationBudget;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// How to reach the external simulator.
#[derive(Debug, Clone)]
pub struct SimulatorConfig {
    pub executable: PathBuf,
    pub model_card: PathBuf,
    pub timeout_seconds: f64,
    pub working_dir: PathBuf,
}

impl SimulatorConfig {
    /// Resolve the executable from the environment, if set.
    pub fn from_env(model_card: PathBuf, working_dir: PathBuf) -> Option<Self> {
        let executable = std::env::var_os(SIMULATOR_PATH_ENV)?;
        Some(Self {
            executable: PathBuf::from(executable),
            model_card,
            timeout_seconds: 60.0,
            working_dir,
        })
    }
}

static CALL_COUNTER: AtomicU64 = AtomicU64::new(0);

/// A collision-free scratch directory per call, so concurrent simulations
/// never share files.
fn unique_subdir(base: &Path) -> Result<PathBuf, std::io::Error> {
    let n = CALL_COUNTER.fetch_add(1, Ordering::Relaxed);
    let dir = base.join(format!("sim-{}-{n}", std::process::id()));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

/// Run one simulation: write the netlist into a fresh scratch directory,
/// launch the simulator on it, enforce the timeout, and return captured
/// stdout. The budget counts exactly the launched simulations — a missing
/// executable fails before the counter moves.
pub fn run_simulation(
    netlist: &str,
    config: &SimulatorConfig,
    budget: &EvaluationBudget,
) -> Result<String, SpiceError> {
    if config.timeout_seconds <= 0.0 {
        return Err(SpiceError::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "timeout must be positive",
        )));
    }
    if !config.executable.is_file() {
        return Err(SpiceError::ExecutableNotFound(
            config.executable.display().to_string(),
        ));
    }
    let dir = unique_subdir(&config.working_dir)?;
    let netlist_path = dir.join("netlist.sp");
    fs::write(&netlist_path, netlist)?;
    let stdout_path = dir.join("stdout.log");
    let stderr_path = dir.join("stderr.log");

    let mut child = Command::new(&config.executable)
        .arg(&netlist_path)
        .current_dir(&dir)
        .stdin(Stdio::null())
        .stdout(fs::File::create(&stdout_path)?)
        .stderr(fs::File::create(&stderr_path)?)
        .spawn()
        .map_err(|e| {
            if e.kind() == std::io::ErrorKind::NotFound {
                SpiceError::ExecutableNotFound(config.executable.display().to_string())
            } else {
                SpiceError::Io(e)
            }
        })?;
    budget.record_evaluation();

    let deadline = Instant::now() + Duration::from_secs_f64(config.timeout_seconds);
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            return Err(SpiceError::Timeout {
                seconds: config.timeout_seconds,
            });
        }
        std::thread::sleep(Duration::from_millis(5));
    };
    if !status.success() {
        return Err(SpiceError::NonzeroExit {
            status: status.to_string(),
            stderr: fs::read_to_string(&stderr_path).unwrap_or_default(),
        });
    }
    Ok(fs::read_to_string(&stdout_path)?)
}
