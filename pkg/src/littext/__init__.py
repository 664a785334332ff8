"""littext: literal-text visualization toolkit.

Turns text corpora into typographic layouts where the words themselves are
the data-carrying marks: verdict treemaps and dictionary-style listings,
dialogue adjacency matrices with repeated word-set highlighting, song rows
over sales bars, skim overlays, and text along data paths.
"""

__version__ = "0.1.0"
