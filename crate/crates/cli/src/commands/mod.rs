mod algebra;
mod cases;
mod lm;
mod reid;
mod sigma;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{Cli, Command};
use crate::output::{CliError, Output};

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Pl { action } => algebra::pl(action),
        Command::F { action } => algebra::f(action),
        Command::Fbr { action } => algebra::fbr(action),
        Command::Lm { action } => lm::run(action),
        Command::Reid { action } => reid::run(action),
        Command::Case { action } => cases::run(action, &mut rng),
        Command::Sigma { action } => sigma::run(action),
    }
}
