"""Convex combinations of tours for cyclic and uniform subtour points."""
__version__ = "0.1.0"
