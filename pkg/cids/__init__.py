"""
    cids

    Offline citation analysis that tells self-citations apart,
    for researchers and for the research units they belong to.
"""

__version__ = "0.1.0"
