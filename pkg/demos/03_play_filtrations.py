"""
A play as two filtrations
=========================

Scenes are hyperedges over characters (scene filtration), or the other way
round (character filtration). Scene i arrives at t=i.
"""

from pathlib import Path

from srp import EXCLUSIVITY, HUB, MAX_ORIGINALITY, diagram, persistence_function
from srp.ingest import character_filtration, load_play, scene_filtration

play = load_play(Path(__file__).parent / "data" / "toy_play.csv")
print(play.title, "-", len(play.scenes), "scenes,", len(play.characters), "characters")

scenes = scene_filtration(play)
cast = character_filtration(play)
print("scene steps class:", scenes.category_class.symbol)
print("character steps class:", cast.category_class.symbol)

# %%
# Exclusivity and max-originality do not care which notion of persistence we
# pick on the scene filtration. Hub may, though this small play does not show it.
for feature in (HUB, EXCLUSIVITY, MAX_ORIGINALITY):
    s, r = (diagram(persistence_function(feature, scenes, m)) for m in ("steady", "ranging"))
    verdict = "same" if s.same_points(r) else "differ"
    print(f"{feature.name:16} steady {s.as_dict()}  ranging {r.as_dict()}  ({verdict})")

# %%
# Character hubs in the dual picture.
print("character hubs:", diagram(persistence_function(HUB, cast, "steady")).as_dict())
