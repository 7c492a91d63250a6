//! Terminal game loop over any reader and writer.

use std::io::{self, BufRead, Write};

use spg_core::rules::Player;
use spg_core::session::{Session, SessionView};
use spg_core::VertexId;

fn totals(view: &SessionView, mover: Player, what_if: spg_core::CostPair) -> Option<(u64, u64)> {
    let (mine, theirs) = (what_if.decider.finite()?, what_if.follower.finite()?);
    let (a, b) = if mover == Player::A { (mine, theirs) } else { (theirs, mine) };
    Some((view.state.cost_a + a, view.state.cost_b + b))
}

fn show(out: &mut impl Write, view: &SessionView) -> io::Result<()> {
    let st = &view.state;
    writeln!(out, "at {} with {} to move, A={} B={}", st.current_label, st.to_move, st.cost_a, st.cost_b)?;
    for (i, mv) in view.legal_moves.iter().enumerate() {
        write!(out, "  [{}] {} (cost {})", i + 1, mv.label, mv.cost)?;
        if let Some((a, b)) = mv.what_if.and_then(|w| totals(view, st.to_move, w)) {
            write!(out, "  ends at A={a} B={b}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Resolve a typed choice: a 1-based menu index or a vertex label.
fn parse_choice(session: &Session, view: &SessionView, text: &str) -> Option<VertexId> {
    if let Ok(i) = text.parse::<usize>() {
        return view.legal_moves.get(i.checked_sub(1)?).map(|m| m.to);
    }
    session.graph().vertex_by_label(text)
}

/// Play until the game ends or input runs out. Type a menu number or a
/// vertex label to move, `q` to quit.
pub fn run(session: &mut Session, input: impl BufRead, mut out: impl Write) -> io::Result<()> {
    let mut lines = input.lines();
    if session.history().len() > 1 {
        let moves: Vec<&str> = session.history()[1..].iter().map(|&v| session.graph().label(v)).collect();
        writeln!(out, "engine opens with {}", moves.join(","))?;
    }
    while !session.is_over() {
        let view = session.view().map_err(io::Error::other)?;
        show(&mut out, &view)?;
        write!(out, "> ")?;
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out)?;
            return Ok(());
        };
        let text = line.trim();
        if text == "q" || text == "quit" {
            return Ok(());
        }
        let Some(to) = parse_choice(session, &view, text) else {
            writeln!(out, "unknown choice `{text}`")?;
            continue;
        };
        match session.play(None, to) {
            Ok(played) => {
                if played.len() > 1 {
                    let replies: Vec<&str> = played[1..].iter().map(|&v| session.graph().label(v)).collect();
                    writeln!(out, "engine moves to {}", replies.join(","))?;
                }
            }
            Err(e) => writeln!(out, "rejected: {e}")?,
        }
    }
    let view = session.view().map_err(io::Error::other)?;
    let path: Vec<&str> = view.history.iter().map(|&v| session.graph().label(v)).collect();
    writeln!(out, "game over: A={} B={} path={}", view.state.cost_a, view.state.cost_b, path.join(","))
}
