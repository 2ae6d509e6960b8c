"""Validate CLI output against the JSON schemas.

usage: validate_schemas.py THETASPEC_BINARY SCHEMA_DIR
"""
import json, sys, pathlib, subprocess
from jsonschema import Draft202012Validator
from referencing import Registry, Resource
d = pathlib.Path(sys.argv[2])
res = {}
for f in d.glob('*.json'):
    s = json.loads(f.read_text()); Draft202012Validator.check_schema(s)
    res[s['$id']] = Resource.from_contents(s)
reg = Registry().with_resources(res.items())
failures = 0


def v(schema, doc, label):
    global failures
    s = json.loads((d / schema).read_text())
    errs = list(Draft202012Validator(s, registry=reg).iter_errors(doc))
    failures += bool(errs)
    print(label, 'OK' if not errs else [f"{list(e.absolute_path)}: {e.message[:150]}" for e in errs[:5]])
T = sys.argv[1]
def run(*a): return json.loads(subprocess.run([T, *a], capture_output=True, text=True).stdout)
v('theta_value.json', run('eval', '--q', '0.3+0.1i', '--x', '-2', '--dx', '1'), 'eval')
v('theta_value.json', run('eval', '--q', '0', '--x', '2'), 'eval0')
v('spectrum.json', run('spectrum', '--max', '3'), 'spectrum+')
v('spectrum.json', run('spectrum', '--scan', 'negative', '--max', '2'), 'spectrum-')
v('spectrum.json', run('spectrum', '--max', '0'), 'spectrum0')
v('zero_track.json', run('track', '--j', '2', '--to', '0.2+0.1i', '--around'), 'track')
v('zero_track.json', run('laurent', '--j', '3', '--coeffs', '5'), 'laurent')
v('certificate_suite.json', run('certify'), 'certify reference')
v('certificate_suite.json', run('certify', '--tables', 'derived'), 'certify derived')
v('certificate_suite.json', run('certify', '--suite', 'disk'), 'certify disk')
v('reproduction_report.json', run('reproduce'), 'reproduce')
v('constants.json', json.loads((d.parent / 'constants.json').read_text()), 'manifest')
v('polynomial.json', {"var": "q", "coeffs": ["1", "-12", "1/3"]}, 'poly')
sys.exit(1 if failures else 0)
