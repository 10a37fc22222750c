from __future__ import annotations

import pytest

from noncollab.prompts import CATALOG, load, placeholders, render


@pytest.mark.parametrize("template_id", sorted(CATALOG))
def test_every_template_loads_and_renders(template_id):
    assert load(template_id).strip()
    values = {name: f"<{name}>" for name in placeholders(template_id)}
    text = render(template_id, **values)
    assert all(f"<{name}>" in text for name in values)


def test_agent_prompt_keeps_literal_braces():
    assert "API call{" in render("agent_multiwoz")


def test_unknown_template():
    with pytest.raises(KeyError):
        load("nope")
