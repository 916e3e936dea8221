# %% [markdown]
# # Language basics
# Scripts are sequences of `;`-terminated statements. The value of the last
# statement is the result of the script.

# %%
from hquery import Interpreter, pretty_print, parse

ss = Interpreter()
print(ss.eval("a = 1; b = 2; [a, b];"))

# Numeric lists add elementwise, other lists concatenate.
print(ss.eval("[0, 1] + [3, 4];"), ss.eval('[1, "a"] + [2];'))

# %% [markdown]
# ## Host functions
# Any Python callable can be registered. Inside a SELECT, a bare function
# name is called with the current row (`this`).

# %%
ss.add_function("square", lambda x: x * x)
print(ss.eval("SELECT square FROM [1, 2, 3] AS list;"))
print(ss.eval("SELECT this, square(this) FROM [1, 2, 3] WHERE this > 1 AS dict;"))

# %% [markdown]
# ## Grouping and ordering

# %%
words = ["pear", "fig", "kiwi", "apple", "plum", "date"]
ss.add_variable("words", words)
ss.add_function("length", len)
print(ss.eval("SELECT length, count FROM words GROUP BY length(this) ORDER BY length(this) AS list;"))
print(ss.eval("SELECT this FROM words ORDER BY length(this) DESC, this AS list;"))

# %% [markdown]
# ## IF and temporal variables
# IF without an else branch returns the condition value. `name{ttl} = expr`
# caches the value for `ttl` seconds.

# %%
print(ss.eval("IF(1 > 2; 'yes');"), ss.eval("IF(1 < 2; 'yes'; 'no');"))

calls = []
ss.add_function("expensive", lambda: calls.append(1) or 42)
ss.eval("cached{60} = expensive();")
ss.eval("cached{60} = expensive();")
print("host calls:", len(calls))

# %% [markdown]
# ## Canonical printing
# The pretty printer inserts only the parentheses precedence needs.

# %%
tree = parse("SELECT (this+1)*2 FROM [1,2] WHERE NOT (this==2) AS list;")
print(pretty_print(tree))
