"""The expression language feeding exact derivatives to the closed forms.

Parsed expressions carry a symbolic derivative; the derivative trees print
back as parseable source.  Malformed input produces a positioned error.
"""

from defcalc import ParseError, RealFunction, differentiate, evaluate, parse, to_source

for source in ("x^2 * sin(x)", "exp(-x^2/2)", "sqrt(1+x^2)", "x^x"):
    ast = parse(source)
    dast = differentiate(ast)
    print(f"f(x) = {source}")
    print(f"  f'(x) = {to_source(dast)}")
    print(f"  f(1.3) = {evaluate(ast, 1.3):.10f}, f'(1.3) = {evaluate(dast, 1.3):.10f}")
print()

print("a parsed function exposes value and derivative callables")
f = RealFunction.from_expression("sin(x)/x")
print(f"  f(2) = {f(2.0):.12f}")
print(f"  f'(2) = {f.derivative(2.0):.12f}")
print()

print("errors carry a position plus expected/found descriptions:")
for bad in ("2*", "pow(x)", "sinh(x)", "1/(x" ):
    try:
        parse(bad)
    except ParseError as err:
        print(f"  {bad!r}")
        print(f"    {bad}")
        print(f"    {' ' * err.position}^ expected {err.expected}, found {err.found}")
