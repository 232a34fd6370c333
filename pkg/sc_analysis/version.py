# Remember to change both this and the version in setup.py!
VERSION = '1.0.0'
