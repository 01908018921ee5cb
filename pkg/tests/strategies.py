import numpy as np
from hypothesis import strategies as st

from kinstatic.group import GroupElement

reals = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
elements = st.builds(GroupElement, reals, reals, reals)
vec6 = st.lists(reals, min_size=6, max_size=6).map(np.array)
