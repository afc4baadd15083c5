"""Routers FastAPI : un router par module (combinatoire, tuples, inégalités, interpolation, données partielles, témoins, hives, scénarios)"""
