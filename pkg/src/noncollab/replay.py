"""Human-readable rendering of a stored transcript."""

from __future__ import annotations

from .agent.transcript import Transcript


def _annotation(a: dict) -> str | None:
    mode, kind = a.get("mode"), a.get("kind")
    if mode == "impatience" and kind == "outburst":
        return f"[impatience: {a['act']}, {a['level']}]"
    if mode == "impatience" and kind == "cynical":
        return "[impatience: cynical tone]"
    if mode == "tangential" and kind == "tangent":
        return f"[tangential: {a['act']}]"
    if mode == "tangential" and kind == "complaint":
        return "[tangential: complaint]"
    if mode == "incomplete" and kind in ("brief", "premature"):
        return f"[incomplete: {kind}]"
    if mode == "core":
        return f"[{kind.replace('_', ' ')}]"
    return None


def render_transcript(t: Transcript) -> str:
    o = t.outcome
    lines = [f"Scenario {t.scenario_id} | mode {t.mode} | trial {t.trial} | seed {t.seed}"]
    lines.append(f"Goal: {t.goal.get('goal_text', '')}")
    for extra in t.goal.get("additions") or []:
        lines.append(f"[unavailable addition] {extra}")
    if t.persona:
        lines.append(f"Persona: {t.persona}")
    lines.append("")
    for turn in t.turns:
        p = turn.payload
        if turn.actor == "user":
            tags = " ".join(filter(None, (_annotation(a) for a in turn.annotations)))
            lines.append(f"User: {p['text']}" + (f"  {tags}" if tags else "") + ("  <ended>" if p.get("ended") else ""))
        elif turn.actor == "agent_action":
            if p["kind"] == "talk":
                lines.append(f"Agent: {p['utterance']}")
            elif p["kind"] == "api_call":
                lines.append(f"  [step {p.get('step')}] {p['api_name']} {p.get('input_parameters')}")
            else:
                lines.append(f"  [step {p.get('step')}] parse error: {p.get('raw', '')!r}")
        elif turn.actor == "observation":
            text = p["text"]
            lines.append("    -> " + (text if len(text) <= 160 else text[:157] + "..."))
    lines.append("")
    lines.append(
        f"Outcome: {o.status}, success={o.success}, steps={o.steps_used}, "
        f"GA={o.ga}, IGA={o.iga}, attempts={o.attempts}"
    )
    return "\n".join(lines) + "\n"
