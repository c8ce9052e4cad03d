"""
Regenerate the frozen regression baselines in src/paritykick/data/baselines.json.

Run after a deliberate change to the physics; review the diff before committing.
"""
import json
from pathlib import Path

import paritykick
from paritykick.baselines import compute_baselines

target = Path(paritykick.__file__).parent / "data" / "baselines.json"
data = compute_baselines()
target.write_text(json.dumps(data, indent=2) + "\n")
print(f"wrote {target}")
print(f"heating suppression ratio nu_kicked/nu_free = {data['heating_suppression']['suppression_ratio']:.4f}")
print(f"decoherence suppression ratio eta_kicked/eta_free = {data['decoherence_suppression']['suppression_ratio']:.4f}")
