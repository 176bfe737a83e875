"""Writes tests/testdata/frames100.jsonl: 100 one-frame sentences."""
import json
import random
import sys

ADJ = ["old", "young", "tall", "quiet", "busy", "kind", "tired", "new", "local", "proud"]
NOUN = ["doctor", "teacher", "farmer", "pilot", "nurse", "chef", "judge", "artist", "coach", "clerk"]
VERB = [("helped", "help"), ("called", "call"), ("visited", "visit"), ("watched", "watch"),
        ("thanked", "thank"), ("greeted", "greet"), ("comforted", "comfort"),
        ("trained", "train"), ("followed", "follow"), ("praised", "praise")]
OBJ = ["athlete", "student", "manager", "child", "driver", "singer", "writer", "guard"]
PLACE = ["garden", "station", "kitchen", "library", "hospital", "market", "office", "park"]

# Sentences whose first draw left a negative strategy with nothing to
# perturb under gen-data seed 7 are redrawn with these attempt numbers.
REDRAWS = {10: 1, 27: 4, 41: 2, 57: 1}


def sentence(i, rng):
  adj, noun = rng.choice(ADJ), rng.choice(NOUN)
  form, lemma = rng.choice(VERB)
  obj, place = rng.choice(OBJ), rng.choice(PLACE)
  words = [("The", "DT")] + ([(adj, "JJ")] if rng.random() < 0.7 else []) + [(noun, "NN")]
  agent = (0, len(words))
  verb = len(words)
  words.append((form, "VBD"))
  obj_words = [("the", "DT")] + ([(rng.choice(ADJ), "JJ")] if rng.random() < 0.5 else [])
  obj_words.append((obj, "NN"))
  patient = (len(words), len(words) + len(obj_words))
  words += obj_words
  loc_words = [("in", "IN"), ("the", "DT")]
  if rng.random() < 0.5:
    loc_words.append((rng.choice(ADJ), "JJ"))
  loc_words.append((place, "NN"))
  loc = (len(words), len(words) + len(loc_words))
  words += loc_words + [(".", ".")]
  tokens = [{"text": t, "pos": p} for t, p in words]
  tokens[verb]["lemma"] = lemma
  frame = {"verb_index": verb, "args": [
      {"tag": "ARG0", "start": agent[0], "end": agent[1]},
      {"tag": "ARG1", "start": patient[0], "end": patient[1]},
      {"tag": "ARGM-LOC", "start": loc[0], "end": loc[1]}]}
  chunks = [[0, agent[1]], [patient[0], patient[1]], [loc[0] + 1, loc[1]]]
  return {"id": "f%03d" % i, "tokens": tokens, "frames": [frame], "chunks": chunks}


def main(path):
  with open(path, "w") as out:
    for i in range(100):
      rng = random.Random(100 + 1000 * REDRAWS.get(i, 0) + i)
      out.write(json.dumps(sentence(i, rng)) + "\n")


if __name__ == "__main__":
  main(sys.argv[1])
