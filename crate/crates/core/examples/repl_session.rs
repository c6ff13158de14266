//! A scripted tactic session, as the `repl` subcommand runs it.

use moncat::cli::ReplState;
use moncat::parse::parse_signature;

const SCRIPT: &str = "
load (f ; g) * h
apply foliate
undo
apply weak_foliate
show
normalize
load g ; u ; inv(u)
apply cancel_isos
apply bogus
";

fn main() {
    let sig = parse_signature(include_str!("../data/worked.sig")).unwrap();
    let mut state = ReplState::new(sig);
    for line in SCRIPT.lines() {
        state.step(line);
    }
    println!("{}", state.transcript.join("\n"));
}
