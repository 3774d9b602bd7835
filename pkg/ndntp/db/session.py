from sqlmodel import Session, SQLModel, create_engine

from ..settings import settings


def make_engine(url: str = settings.DATABASE_URL):
    # SQLite connections are shared with the API worker threads
    connect_args = {"check_same_thread": False} if url.startswith("sqlite") else {}
    return create_engine(url, echo=False, connect_args=connect_args)


engine = make_engine()


# Create the run tables if they don't exist yet
def init_db(bind=None):
    from . import models  # noqa: F401

    SQLModel.metadata.create_all(bind if bind is not None else engine)


# Dependency for getting a database session
def get_session():
    with Session(engine) as session:
        yield session
