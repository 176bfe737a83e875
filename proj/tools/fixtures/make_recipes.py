"""Writes tests/testdata/recipes.jsonl: hand-annotated sentences for the recipe tests."""
import json
import sys
def rec(id, toks, frames, chunks=None):
    r={"id":id,"tokens":[{"text":t,"pos":p} for t,p in toks],"frames":frames}
    if chunks is not None: r["chunks"]=chunks
    return r
def T(s):
    out=[]
    for w in s.split():
        t,p=w.rsplit('/',1); out.append((t,p))
    return out
def A(tag,s,e): return {"tag":tag,"start":s,"end":e}
L=[]
# 0 relative clause sentence (untangle, shorten_core, change_voice)
t=T("The/DT athlete/NN who/WP was/VBD seen/VBN by/IN the/DT judges/NNS yesterday/NN called/VBD the/DT manager/NN ./.")
L.append(rec("athlete-yesterday",t,[
 {"verb_index":4,"lemma":"see","args":[A("ARG1",0,2),A("R-ARG1",2,3),A("ARG0",5,8),A("ARGM-TMP",8,9)]},
 {"verb_index":9,"lemma":"call","args":[A("ARG0",0,9),A("ARG1",10,12)]}],
 [[0,2],[6,8],[10,12]]))
# 1 swap core example
t=T("The/DT athlete/NN who/WP was/VBD seen/VBN by/IN the/DT judges/NNS called/VBD the/DT manager/NN ./.")
L.append(rec("athlete-judges",t,[
 {"verb_index":4,"lemma":"see","args":[A("ARG1",0,2),A("R-ARG1",2,3),A("ARG0",5,8)]},
 {"verb_index":8,"lemma":"call","args":[A("ARG0",0,8),A("ARG1",9,11)]}],
 [[0,2],[6,8],[9,11]]))
# 2 replace core
t=T("The/DT judge/NN behind/IN the/DT manager/NN saw/VBD the/DT doctors/NNS ./.")
L.append(rec("judge-doctors",t,[{"verb_index":5,"lemma":"see","args":[A("ARG0",0,5),A("ARG1",6,8)]}],[[0,2],[3,5],[6,8]]))
# 3 boolq
t=T("does/VBZ Deadpool/NNP have/VB a/DT kid/NN in/IN the/DT comics/NNS ?/.")
L.append(rec("boolq-deadpool",t,[{"verb_index":2,"lemma":"have","args":[A("ARG0",1,2),A("ARG1",3,8)]}],[[1,2],[3,5],[6,8]]))
# 4 pp to noun
t=T("Do/VBP you/PRP prefer/VB ham/NN ,/, bacon/NN or/CC sausages/NNS with/IN your/PRP$ breakfast/NN ?/.")
L.append(rec("ud-breakfast",t,[{"verb_index":2,"lemma":"prefer","args":[A("ARG0",1,2),A("ARG1",3,8),A("ARGM-ADV",8,11)]}],[[1,2],[3,4],[5,6],[7,8],[9,11]]))
# 5 pp to verb
t=T("It/PRP has/VBZ local/JJ boutiques/NNS and/CC a/DT diverse/JJ range/NN of/IN food/NN at/IN all/DT prices/NNS and/CC styles/NNS ./.")
L.append(rec("ud-boutiques",t,[{"verb_index":1,"lemma":"have","args":[A("ARG0",0,1),A("ARG1",2,15)]}],[[0,1],[2,4],[5,8],[9,10],[11,15]]))
# 6 matres
t=T("Volleyball/NN is/VBZ a/DT popular/JJ sport/NN in/IN the/DT area/NN ,/, and/CC more/JJR than/IN 200/CD people/NNS would/MD be/VB watching/VBG the/DT game/NN ,/, the/DT chief/NN said/VBD ./.")
L.append(rec("matres-volleyball",t,[
 {"verb_index":1,"lemma":"be","args":[A("ARG1",0,1),A("ARG2",2,8)]},
 {"verb_index":16,"lemma":"watch","args":[A("ARG0",10,14),A("ARG1",17,19)]},
 {"verb_index":22,"lemma":"say","args":[A("ARG1",0,19),A("ARG0",20,22)]}],
 [[0,1],[2,5],[6,8],[10,14],[17,19],[20,22]]))
# 7 qa
t=T("How/WRB did/VBD the/DT Huguenots/NNPS defend/VB themselves/PRP ?/.")
L.append(rec("qa-huguenots",t,[{"verb_index":4,"lemma":"defend","args":[A("ARGM-MNR",0,1),A("ARG0",2,4),A("ARG1",5,6)]}],[[2,4],[5,6]]))
# 8 style: fronted pp + adjectives
t=T("In/IN the/DT quiet/JJ room/NN ,/, the/DT old/JJ doctor/NN will/MD gently/RB comfort/VB the/DT athlete/NN ./.")
L.append(rec("style-room",t,[{"verb_index":10,"lemma":"comfort","args":[A("ARGM-LOC",0,4),A("ARG0",5,8),A("ARGM-MOD",8,9),A("ARGM-MNR",9,10),A("ARG1",11,13)]}],[[1,4],[5,8],[11,13]]))
# 9 no frames
L.append(rec("no-verbs",T("What/WP a/DT day/NN !/."),[]))
with open(sys.argv[1] if len(sys.argv) > 1 else 'tests/testdata/recipes.jsonl','w') as f:
    for r in L: f.write(json.dumps(r)+"\n")
